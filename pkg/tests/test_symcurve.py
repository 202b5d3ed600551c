import math

import pytest
from hypothesis import given, strategies as st

from parhiggs.exactalg import ONE, T, ZERO, LaurentPoly
from parhiggs.symcurve import jac_poincare, proj_poincare, sym_poincare


def macdonald_oracle(g, N):
    """Explicit sum: choose k odd classes from H^1, then a point-and-hyperplane
    power for the rest."""
    out = {}
    for k in range(min(N, 2 * g) + 1):
        for j in range(N - k + 1):
            out[k + 2 * j] = out.get(k + 2 * j, 0) + math.comb(2 * g, k)
    return LaurentPoly(out)


@pytest.mark.parametrize("g, expected", [
    (0, ONE), (1, ONE + 2 * T + T ** 2), (2, LaurentPoly.from_list([1, 4, 6, 4, 1]))])
def test_jacobian(g, expected):
    assert jac_poincare(g) == expected


@pytest.mark.parametrize("w, expected", [
    (1, ONE), (4, LaurentPoly.from_list([1, 0, 1, 0, 1, 0, 1])), (0, ZERO), (-3, ZERO)])
def test_projective(w, expected):
    assert proj_poincare(w) == expected


@pytest.mark.parametrize("g, N, expected", [
    (2, 0, [1]), (1, 1, [1, 2, 1]), (2, 2, [1, 4, 7, 4, 1])])
def test_symmetric_product_examples(g, N, expected):
    assert sym_poincare(g, N) == LaurentPoly.from_list(expected)


def test_negative_power_is_empty():
    assert sym_poincare(3, -1) == ZERO


@given(st.integers(0, 5), st.integers(0, 12))
def test_matches_explicit_sum(g, N):
    assert sym_poincare(g, N) == macdonald_oracle(g, N)


@pytest.mark.invariants
@given(st.integers(0, 5), st.integers(0, 12))
def test_palindromic_constant_term_one(g, N):
    p = sym_poincare(g, N)
    assert p.reflect().shift(2 * N) == p
    assert p.coeff(0) == 1


@given(st.integers(0, 15))
def test_genus_zero_is_projective_space(N):
    assert sym_poincare(0, N) == proj_poincare(N + 1)


@given(st.integers(0, 10))
def test_first_power_is_the_curve(g):
    assert sym_poincare(g, 1) == ONE + 2 * g * T + T ** 2


@given(st.integers(0, 5), st.integers(0, 12))
def test_euler_characteristic(g, N):
    # signed binomial: chi(S^N X) = (-1)^N C(2g-2, N), with C(-2, N) = (-1)^N (N+1)
    top = 2 * g - 2
    expected = (-1) ** N * (math.comb(top, N) if top >= 0 else (-1) ** N * (N + 1))
    assert sym_poincare(g, N)(-1) == expected
