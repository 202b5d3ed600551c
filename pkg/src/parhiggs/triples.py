"""Parabolic triples with r1 = 2, r2 = 1: the sigma-range, walls, flip data
and chamber Poincaré polynomials (closed form and wall sum)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import CriticalValueError, GenericityError, InexactError, ValidationError
from .exactalg import ONE, T, ZERO, AuxSeries, LaurentPoly
from .symcurve import jac_poincare, proj_poincare, sym_poincare
from .weights import WeightSystem

__all__ = [
    "WeightSystem", "TripleSpec", "WallRecord", "sigma_range", "critical_values",
    "flip_data", "triples_poincare", "triples_poincare_wallsum", "triples_dim",
]


@dataclass(frozen=True)
class TripleSpec:
    """Rank-2 bundle E1 of degree d1, line bundle L of degree d2.

    ``weights.points[p] = (alpha, beta1, beta2)`` with beta1 < beta2.
    """

    g: int
    weights: WeightSystem
    d1: int
    d2: int
    sigma: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "sigma", Fraction(self.sigma))
        if self.g < 0:
            raise ValidationError("genus must be nonnegative")
        for p in self.weights.points:
            if len(p) != 3:
                raise ValidationError("triple weights are (alpha, beta1, beta2) per point")
            if not p[1] < p[2]:
                raise ValidationError("need beta1 < beta2 at every point")

    @property
    def n(self):
        return self.weights.n

    def with_sigma(self, sigma):
        return replace(self, sigma=Fraction(sigma))


@dataclass(frozen=True)
class WallRecord:
    d_M: int
    eps: tuple
    sigma_c: Fraction
    s1: int
    s2: int
    s3: int
    w_plus: int
    w_minus: int
    N: int
    delta: LaurentPoly = field(compare=False, default=ZERO)


def par_slopes(spec):
    a = spec.weights.points
    mu1 = (spec.d1 + sum(b1 + b2 for _, b1, b2 in a)) / Fraction(2)
    mu2 = spec.d2 + sum(al for al, _, _ in a)
    return mu1, mu2


def sigma_range(spec):
    """(sigma_m, sigma_M)."""
    mu1, mu2 = par_slopes(spec)
    return mu1 - mu2, 4 * (mu1 - mu2) + 3 * spec.n


@dataclass(frozen=True)
class _EpsData:
    eps: tuple
    s1: int
    s2: int
    s3: int
    offset: Fraction  # sum of 2 beta_eps - alpha - beta_varsigma


def _eps_data(weights, eps):
    s1 = s2 = s3 = 0
    off = Fraction(0)
    for (al, b1, b2), e in zip(weights.points, eps):
        be, bs = (b1, b2) if e == 1 else (b2, b1)
        s1 += al < bs
        s2 += al < be
        s3 += be < bs
        off += 2 * be - al - bs
    return _EpsData(tuple(eps), s1, s2, s3, off)


def _all_eps(weights):
    return [_eps_data(weights, e) for e in product((1, 2), repeat=weights.n)]


def _wall(spec, d_M, ed, fixed_det=False):
    g, n, d1, d2 = spec.g, spec.n, spec.d1, spec.d2
    w_plus = d1 - d2 - d_M + ed.s2 + ed.s3
    w_minus = 2 * d_M - d1 + g - 1 + n - ed.s3
    N = d1 - d2 - d_M + ed.s1
    sigma_c = 3 * d_M - d1 - d2 + ed.offset
    jac = jac_poincare(g) ** (1 if fixed_det else 2)
    delta = (proj_poincare(w_minus) - proj_poincare(w_plus)) * jac * sym_poincare(g, N)
    return WallRecord(d_M, ed.eps, sigma_c, ed.s1, ed.s2, ed.s3, w_plus, w_minus, N, delta)


def critical_values(spec, fixed_det=False):
    """Genuine walls (N >= 0) above sigma_m, sorted by sigma_c.

    Raises GenericityError if two walls coincide or a wall sits on sigma_m.
    """
    sigma_m, _ = sigma_range(spec)
    walls = []
    for ed in _all_eps(spec.weights):
        top = spec.d1 - spec.d2 + ed.s1  # N >= 0
        x = (sigma_m + spec.d1 + spec.d2 - ed.offset) / 3
        if x.denominator == 1 and x <= top:
            raise GenericityError("a wall coincides with sigma_m")
        for d_M in range(math.floor(x) + 1, top + 1):
            walls.append(_wall(spec, d_M, ed, fixed_det))
    walls.sort(key=lambda w: w.sigma_c)
    for a, b in zip(walls, walls[1:]):
        if a.sigma_c == b.sigma_c:
            raise GenericityError("walls coincide at sigma = %s" % a.sigma_c)
    return walls


def flip_data(spec, d_M, eps, fixed_det=False):
    """WallRecord of the candidate wall (d_M, eps); must be genuine."""
    ed = _eps_data(spec.weights, tuple(eps))
    rec = _wall(spec, d_M, ed, fixed_det)
    if rec.N < 0:
        raise ValidationError("wall (d_M=%d, eps=%r) is not genuine: N=%d" % (d_M, eps, rec.N))
    return rec


def largest_wall(spec):
    """sigma_L, or None when there are no genuine walls."""
    walls = critical_values(spec)
    return walls[-1].sigma_c if walls else None


def _check_sigma(spec):
    """Returns False when the moduli space is empty because sigma < sigma_m;
    raises for sigma = sigma_m or sigma on a genuine wall."""
    sigma_m, _ = sigma_range(spec)
    if spec.sigma == sigma_m:
        raise CriticalValueError("sigma equals sigma_m")
    if spec.sigma < sigma_m:
        return False
    for ed in _all_eps(spec.weights):
        x = (spec.sigma + spec.d1 + spec.d2 - ed.offset) / 3
        if x.denominator == 1 and x <= spec.d1 - spec.d2 + ed.s1:
            raise CriticalValueError("sigma = %s is a critical value" % spec.sigma)
    return True


@lru_cache(maxsize=4096)
def _core_series(g, bound, tail):
    # (1+xt)^(2g) / ((1-x)(1-xt^2)(1 - tail*x)) known up to x^bound
    num = AuxSeries(("x",), {(0,): 1, (1,): T}) ** (2 * g)
    s = num.truncate((bound,)).div_one_minus((1,)).div_one_minus((1,), T ** 2)
    return s.div_one_minus((1,), tail)


def triples_poincare(spec, fixed_det=False):
    """Closed formula: sum over eps of two x^0 coefficient extractions."""
    if not _check_sigma(spec):
        return ZERO
    g, n, d1, d2 = spec.g, spec.n, spec.d1, spec.d2
    jac = jac_poincare(g) ** (1 if fixed_det else 2)
    pieces = []
    for ed in _all_eps(spec.weights):
        dbar = math.floor((d1 + d2 - ed.offset + spec.sigma) / 3) + 1
        target = (d1 - d2 + ed.s1) - dbar  # coefficient of x^target in the core
        if target < 0:
            continue
        e1 = 2 * d1 - 2 * d2 + 2 * ed.s2 + 2 * ed.s3 - 2 * dbar
        e2 = -2 * d1 + 2 * g - 2 + 2 * n - 2 * ed.s3 + 4 * dbar
        pieces.append((target, e1, e2))
    if not pieces:
        return ZERO
    bound = max(p[0] for p in pieces)
    first = _core_series(g, bound, T ** -2)
    second = _core_series(g, bound, T ** 4)
    total = ZERO
    for target, e1, e2 in pieces:
        total = total + first.coeff_at((target,)).shift(e1) - second.coeff_at((target,)).shift(e2)
    return (total * jac).exact_div(ONE - T ** 2)


def triples_poincare_wallsum(spec, fixed_det=False):
    """Sum of the Poincaré jumps over the genuine walls above sigma."""
    if not _check_sigma(spec):
        return ZERO
    total = ZERO
    for w in critical_values(spec, fixed_det):
        if w.sigma_c > spec.sigma:
            total = total + w.delta
    return total


def triples_dim(spec):
    """w+ + w- + 2g + N - 1, checked to agree over all genuine walls."""
    walls = critical_values(spec)
    if not walls:
        raise ValidationError("no genuine walls: dimension undefined by this route")
    dims = {w.w_plus + w.w_minus + 2 * spec.g + w.N - 1 for w in walls}
    if len(dims) != 1:
        raise InexactError("wall-dependent dimension: %r" % sorted(dims))
    return dims.pop()


def is_palindromic(poly, dim):
    """t^(2 dim) P(1/t) == P(t)."""
    return poly.reflect().shift(2 * dim) == poly
