"""Poincaré polynomials of the basic building blocks: Jacobians, projective
spaces and symmetric products of a genus-g curve."""
from functools import lru_cache

from .errors import ValidationError
from .exactalg import ONE, T, ZERO, AuxSeries, LaurentPoly

X = ("x",)


def jac_poincare(g):
    """(1+t)^(2g)."""
    if g < 0:
        raise ValidationError("genus must be nonnegative")
    return (ONE + T) ** (2 * g)


def proj_poincare(w):
    """P_t of P^(w-1): 1 + t^2 + ... + t^(2w-2), and 0 when w <= 0."""
    if w <= 0:
        return ZERO
    return LaurentPoly({2 * i: 1 for i in range(w)})


@lru_cache(maxsize=None)
def sym_poincare(g, N):
    """MacDonald: coefficient of x^N in (1+xt)^(2g) / ((1-x)(1-xt^2)).

    Zero for N < 0 (empty symmetric product).
    """
    if g < 0:
        raise ValidationError("genus must be nonnegative")
    if N < 0:
        return ZERO
    num = AuxSeries(X, {(1,): T, (0,): 1}) ** (2 * g)
    series = num.truncate((N,)).div_one_minus((1,)).div_one_minus((1,), T ** 2)
    return series.coeff_at((N,))
