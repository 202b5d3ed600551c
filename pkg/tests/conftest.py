import sympy
from hypothesis import HealthCheck, settings, strategies as st

from parhiggs.exactalg import LaurentPoly

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

t_sym = sympy.Symbol("t")


def to_sympy(p):
    return sum((c * t_sym ** k for k, c in p.items()), sympy.Integer(0))


def from_sympy(expr):
    expr = sympy.expand(expr)
    poly = sympy.Poly(expr * t_sym ** 64, t_sym)
    return LaurentPoly({k[0] - 64: int(c) for k, c in poly.terms()})


def laurent(min_exp=-4, max_exp=6, max_coeff=50, max_terms=5):
    return st.dictionaries(
        st.integers(min_exp, max_exp), st.integers(-max_coeff, max_coeff),
        max_size=max_terms).map(LaurentPoly)


def poly(max_deg=5, max_coeff=20):
    return laurent(0, max_deg, max_coeff, max_deg + 1)
