"""Rank-3 parabolic Higgs moduli (full flags): critical strata, Morse
indices, the four type contributions with their stratum-sum oracles, rank-3
parabolic bundles, and the assembled Poincaré polynomials."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .errors import InexactError, ValidationError
from .exactalg import ONE, T, ZERO, AuxSeries, FactoredSum, LaurentPoly
from .symcurve import jac_poincare, sym_poincare
from .triples import TripleSpec, sigma_range, triples_poincare
from .weights import WeightSystem, default_weights

NONFIXED, FIXED = "nonfixed", "fixed"
INVARIANT, VARIANT = "fixed_invariant", "fixed_variant"
TYPES = ("3", "111", "12", "21")


@dataclass(frozen=True)
class HiggsParams:
    """Genus, number of marked points, degree, and full-flag weights
    ``alpha1 < alpha2 < alpha3`` at each point (small and generic)."""

    g: int
    n: int
    delta: int = 1
    weights: WeightSystem = None

    def __post_init__(self):
        if self.g < 0:
            raise ValidationError("genus must be nonnegative")
        if self.n < 1:
            raise ValidationError("need at least one marked point")
        if self.delta % 3 == 0:
            raise ValidationError("degree must not be divisible by 3")
        w = self.weights if self.weights is not None else default_weights(self.n)
        object.__setattr__(self, "weights", w)
        if w.n != self.n:
            raise ValidationError("weights given for %d points, expected %d" % (w.n, self.n))
        for p in w.points:
            if len(p) != 3 or not p[0] < p[1] < p[2]:
                raise ValidationError("need three increasing weights per point")
        if not w.is_small():
            raise ValidationError("weights must all be below 1/(12n)")
        w.require_generic()

    @property
    def delta0(self):
        return self.delta % 3

    def with_delta(self, delta):
        return replace(self, delta=delta)


@dataclass(frozen=True)
class StratumRecord:
    type: str
    d1: int
    varpi: tuple
    index: int
    poincare: LaurentPoly = field(compare=False)
    m: int | None = None
    m1: int | None = None
    m2: int | None = None
    s1: int | None = None
    s2: int | None = None
    s0: int | None = None
    F: Fraction | None = None
    G: Fraction | None = None


def moduli_dim(r, g, n):
    """Complex dimension with full flags: r^2(2g-2) + 2 + n(r^2 - r)."""
    if r < 1:
        raise ValidationError("rank must be positive")
    return r * r * (2 * g - 2) + 2 + n * (r * r - r)


def morse_index(blocks, g, n, delta=None):
    """Morse index of a critical point E = E_0 + ... + E_m with the Higgs
    field mapping E_l to E_{l+1} (x K(D)).

    ``blocks`` is a sequence of ``(rank, degree, weights)`` where
    ``weights[p]`` lists the weights of that block at point ``p``.
    """
    r = sum(b[0] for b in blocks)
    if delta is not None and sum(b[1] for b in blocks) != delta:
        raise ValidationError("block degrees do not sum to the total degree")
    for rk, _, ws in blocks:
        if len(ws) != n or any(len(w) != rk for w in ws):
            raise ValidationError("block weights do not match its rank")
    f_p = (r * r - r) // 2
    lam = r * r * (2 * g - 2) + 2 * n * f_p
    for rk, _, _ in blocks:
        lam += 2 * ((1 - g - n) * rk * rk + n * rk * (rk + 1) // 2)
    for (ra, da, wa), (rb, db, wb) in zip(blocks, blocks[1:]):
        dim_n = sum(1 for p in range(n) for x in wa[p] for y in wb[p] if x < y)
        lam += 2 * ((1 - g) * ra * rb - ra * db + rb * da - dim_n)
    return lam


# ---------------------------------------------------------------------------
# type (1,1,1)

def _binom(top, k):
    if top < 0 or k < 0 or k > top:
        return 0
    return math.comb(top, k)


def enumerate_111(params):
    """All non-empty type (1,1,1) strata (d1, m, varpi)."""
    g, n, D = params.g, params.n, params.delta
    pts = params.weights.points
    jac = jac_poincare(g)
    out = []
    for varpi in product(list(permutations((0, 1, 2))), repeat=n):
        F = sum(sum(a) - 3 * a[v[2]] for a, v in zip(pts, varpi))
        G = sum(2 * sum(a) - 3 * a[v[1]] - 3 * a[v[2]] for a, v in zip(pts, varpi))
        s1 = sum(a[v[0]] > a[v[1]] for a, v in zip(pts, varpi))
        s2 = sum(a[v[1]] > a[v[2]] for a, v in zip(pts, varpi))
        m_lo = math.floor((2 * D - F) / 3) + 1
        m_hi = (3 * n + 6 * g - 6 + 2 * D - s1 - 2 * s2) // 3
        for m in range(m_lo, m_hi + 1):
            d_lo = math.floor((D - G) / 3) + 1
            d_hi = (m + n - s1 + 2 * g - 2) // 2
            for d1 in range(d_lo, d_hi + 1):
                m1 = m - 2 * d1 + n - s1 + 2 * g - 2
                m2 = D - 2 * m + d1 + n - s2 + 2 * g - 2
                if m1 < 0 or m2 < 0:
                    continue
                blocks = [
                    (1, d1, [(a[v[0]],) for a, v in zip(pts, varpi)]),
                    (1, m - d1, [(a[v[1]],) for a, v in zip(pts, varpi)]),
                    (1, D - m, [(a[v[2]],) for a, v in zip(pts, varpi)]),
                ]
                lam = morse_index(blocks, g, n, D)
                poly = jac * sym_poincare(g, m1) * sym_poincare(g, m2)
                out.append(StratumRecord("111", d1, tuple(tuple(v) for v in varpi), lam,
                                         poly, m=m, m1=m1, m2=m2, s1=s1, s2=s2, F=F, G=G))
    return out


def index_111(params, rec):
    """Closed index formula for a (1,1,1) stratum."""
    return 2 * (4 * params.g - 4 + params.n + rec.s1 + rec.s2 - params.delta + rec.d1 + rec.m)


_UV = ("u", "v")


@lru_cache(maxsize=None)
def _c111_core(g, n, A, B):
    bounds = (A, B)
    t2 = T ** 2
    base = AuxSeries(_UV, {(0, 0): 1, (2, 1): 2 * t2, (1, 2): 2 * t2, (3, 3): T ** 4}, bounds)
    s = base ** n
    s = s * (AuxSeries(_UV, {(0, 0): 1, (2, 1): T}, bounds) ** (2 * g))
    s = s * (AuxSeries(_UV, {(0, 0): 1, (1, 2): T}, bounds) ** (2 * g))
    for mono, c in (((2, 1), ONE), ((1, 2), ONE), ((2, 1), t2), ((1, 2), t2),
                    ((0, 3), t2), ((3, 0), t2)):
        s = s.div_one_minus(mono, c)
    return s.coeff_at((A, B))


def contribution_111(params, mode=NONFIXED, delta0=None):
    """Type (1,1,1) contribution (small-weight closed form)."""
    g, n = params.g, params.n
    d0 = params.delta0 if delta0 is None else delta0
    if mode == VARIANT:
        if g == 0:
            return ZERO
        return (2 * 6 ** (n - 1) * (3 ** (2 * g) - 1)) * T ** (12 * g - 12 + 6 * n) \
            * (ONE + T) ** (4 * g - 4)
    if mode not in (NONFIXED, INVARIANT):
        raise ValidationError("unknown mode %r" % mode)
    A, B = 3 * n + 6 * g - 9 + d0, 3 * n + 6 * g - 6 - d0
    if A < 0 or B < 0:
        return ZERO
    core = _c111_core(g, n, A, B).shift(2 * (4 * g - 3 + n))
    return core * jac_poincare(g) if mode == NONFIXED else core


def stratum_sum_111(params, mode=NONFIXED):
    """Oracle: sum of t^index * P over the enumerated (1,1,1) strata."""
    g, n, D = params.g, params.n, params.delta
    total = ZERO
    for rec in enumerate_111(params):
        if mode == NONFIXED:
            total = total + rec.poincare.shift(rec.index)
            continue
        # strata surviving in fixed determinant: m1 + 2 m2 + D + s1 + 2 s2 = 0 mod 3
        if (rec.m1 + 2 * rec.m2 + D + rec.s1 + 2 * rec.s2) % 3:
            continue
        if mode == INVARIANT:
            total = total + (sym_poincare(g, rec.m1) * sym_poincare(g, rec.m2)).shift(rec.index)
        elif mode == VARIANT:
            mult = (3 ** (2 * g) - 1) * _binom(2 * g - 2, rec.m1) * _binom(2 * g - 2, rec.m2)
            if mult:
                total = total + LaurentPoly.monomial(rec.index + rec.m1 + rec.m2, mult)
        else:
            raise ValidationError("unknown mode %r" % mode)
    return total


# ---------------------------------------------------------------------------
# types (1,2) and (2,1)

@lru_cache(maxsize=None)
def _type12_core(g, n, target, second):
    # x^target coefficient of (1+xt)^(2g) (num)^n / ((1-x)(1-xt^2)(1 - a x)(1 - b x^2))
    X = ("x",)
    if second:
        numer = AuxSeries(X, {(0,): 1 + 2 * T ** 2, (1,): 2 * T ** 4 + T ** 6})
        a, b = T ** 4, T ** 8
    else:
        numer = AuxSeries(X, {(0,): 1 + 2 * T ** 2, (1,): 2 * T ** 2 + T ** 4})
        a, b = T ** -2, T ** 2
    s = numer.truncate((target,)) ** n
    s = s * AuxSeries(X, {(0,): 1, (1,): T}) ** (2 * g)
    s = s.div_one_minus((1,)).div_one_minus((1,), T ** 2)
    s = s.div_one_minus((1,), a).div_one_minus((2,), b)
    return s.coeff_at((target,))


def _type12_closed(g, n, x_exp, e1, e2, mode):
    target = -x_exp
    if target < 0:
        return ZERO
    jac = jac_poincare(g) ** (2 if mode == NONFIXED else 1)
    diff = _type12_core(g, n, target, False).shift(e1) - _type12_core(g, n, target, True).shift(e2)
    return (diff * jac).exact_div(ONE - T ** 2)


def contribution_12(params, mode=NONFIXED, delta0=None):
    g, n = params.g, params.n
    d0 = params.delta0 if delta0 is None else delta0
    _check_mode(mode)
    return _type12_closed(g, n, 5 - 2 * g - d0 - n, 8 * g - 8 + 2 * n, 6 * g + 6 - 4 * d0, mode)


def contribution_21(params, mode=NONFIXED, delta0=None):
    g, n = params.g, params.n
    d0 = params.delta0 if delta0 is None else delta0
    _check_mode(mode)
    return _type12_closed(g, n, 2 - 2 * g + d0 - n, 8 * g - 8 + 2 * n, 6 * g - 6 + 4 * d0, mode)


def _check_mode(mode):
    if mode not in (NONFIXED, FIXED):
        raise ValidationError("mode must be 'nonfixed' or 'fixed', got %r" % mode)


def _split(point, k):
    """Line weight index k; the other two increasing."""
    rest = tuple(w for i, w in enumerate(point) if i != k)
    return point[k], rest


def _d1_window(make_spec, g, n):
    """d1 values whose triple has (2g-2-3n)/4 - 1 < sigma_m < 2g-2.  sigma_m
    is affine in d1 with slope 3/2."""
    s0 = sigma_range(make_spec(0))[0]
    lo = Fraction(2 * g - 2 - 3 * n, 4) - 1
    hi = Fraction(2 * g - 2)
    first = math.floor((lo - s0) * Fraction(2, 3)) - 1
    last = math.ceil((hi - s0) * Fraction(2, 3)) + 1
    return [d for d in range(first, last + 1) if sigma_range(make_spec(d))[0] < hi]


def enumerate_type12(params, which, mode=NONFIXED):
    """Strata of type (1,2) or (2,1), each evaluated as a moduli space of
    triples at sigma = 2g-2 (the (2,1) case via the dual triple)."""
    if which not in ("12", "21"):
        raise ValidationError("type must be '12' or '21'")
    g, n, D = params.g, params.n, params.delta
    pts = params.weights.points
    sigma = Fraction(2 * g - 2)
    out = []
    for varpi in product((0, 1, 2), repeat=n):
        split = [_split(p, k) for p, k in zip(pts, varpi)]
        if which == "12":
            tw = WeightSystem(tuple((a, b[0], b[1]) for a, b in split))

            def make(d1, tw=tw):
                return TripleSpec(g, tw, d1, D - d1 + 4 * g - 4, sigma)
        else:
            tw = WeightSystem(tuple((1 - a, 1 - b[1], 1 - b[0]) for a, b in split))

            def make(d1, tw=tw):
                d2 = D - d1 + 2 * g - 2
                return TripleSpec(g, tw, -2 * n - d2, -n - d1, sigma)
        for d1 in _d1_window(make, g, n):
            poly = triples_poincare(make(d1), fixed_det=(mode == FIXED))
            if not poly:
                continue
            if which == "12":
                d2 = D - d1 + 4 * g - 4
                s0 = sum((b[0] > a) + (b[1] > a) for a, b in split)
                blocks = [(1, d2, [(a,) for a, _ in split]),
                          (2, d1 - 4 * g + 4, [b for _, b in split])]
            else:
                d2 = D - d1 + 2 * g - 2
                s0 = sum((b[0] < a) + (b[1] < a) for a, b in split)
                blocks = [(2, d2, [b for _, b in split]),
                          (1, d1 - 2 * g + 2, [(a,) for a, _ in split])]
            lam = morse_index(blocks, g, n, D)
            out.append(StratumRecord(which, d1, tuple(varpi), lam, poly, s0=s0))
    return out


def index_type12(params, rec):
    """Closed index formulas for (1,2) / (2,1) strata."""
    g, n, D = params.g, params.n, params.delta
    if rec.type == "12":
        d2 = D - rec.d1 + 4 * g - 4
        return 12 * g - 12 + 4 * n - 2 * rec.d1 + 4 * d2 - 2 * rec.s0
    d2 = D - rec.d1 + 2 * g - 2
    return 12 * g - 12 + 4 * n - 4 * rec.d1 + 2 * d2 - 2 * rec.s0


def stratum_sum_type12(params, which, mode=NONFIXED):
    _check_mode(mode)
    total = ZERO
    for rec in enumerate_type12(params, which, mode):
        total = total + rec.poincare.shift(rec.index)
    return total


# ---------------------------------------------------------------------------
# type (3): rank-3 parabolic bundles

def _one_minus_t2k(k):
    return ONE - T ** (2 * k)


def bundles3_poincare(params, mode=NONFIXED):
    """Closed rank-3 formula; the fixed version divides by (1+t)^(2g)."""
    _check_mode(mode)
    g, n = params.g, params.n
    t = T
    num = (ONE + t ** 3) ** (2 * g) * (ONE + t ** 5) ** (2 * g) \
        + (ONE + t) ** (4 * g) * (ONE + t ** 2 + t ** 4) * t ** (6 * g - 2) \
        - (ONE + t) ** (2 * g) * (ONE + t ** 3) ** (2 * g) * (ONE + t ** 2) ** 2 * t ** (4 * g - 2)
    num = num * (ONE + 2 * t ** 2 + 2 * t ** 4 + t ** 6) ** (n - 1)
    if mode == NONFIXED:
        num = num * jac_poincare(g)
    den = _one_minus_t2k(1) ** 3 * _one_minus_t2k(2)
    return num.exact_div(den)


def _piece_poincare(rank, g, n):
    """P_R for a full-flag piece of rank ``rank``: numerator and the
    factored denominator."""
    num = ONE
    den = Counter()
    for i in range(1, rank + 1):
        num = num * _one_minus_t2k(i) ** n * (ONE + T ** (2 * i - 1)) ** (2 * g)
    den[_one_minus_t2k(1)] += n * rank  # every step has multiplicity one
    den[_one_minus_t2k(rank)] += 1
    for i in range(1, rank):
        den[_one_minus_t2k(i)] += 2
    return num, den


def _hn_assignments(hn):
    """Intersection matrices at one point for Harder-Narasimhan type ``hn``:
    maps from flag steps (0, 1, 2) to pieces with the right column sizes."""
    out = []
    for assign in product(range(len(hn)), repeat=3):
        if all(assign.count(k) == size for k, size in enumerate(hn)):
            out.append(assign)
    return out


def bundles3_strata_sum(params, mode=NONFIXED):
    """Oracle: the Harder-Narasimhan sum over types and intersection
    matrices, with weights entering through the integer parts."""
    _check_mode(mode)
    g, n, D = params.g, params.n, params.delta
    pts = params.weights.points
    alpha_R = sum(sum(p) for p in pts)
    acc = FactoredSum()
    for hn in ((3,), (1, 2), (2, 1), (1, 1, 1)):
        r = len(hn)
        per_point = _hn_assignments(hn)
        pieces = [_piece_poincare(k, g, n) for k in hn]
        for I in product(per_point, repeat=n):
            sigma_p = sum(1 for assign in I for i in range(3) for j in range(i + 1, 3)
                          if assign[i] > assign[j])
            M = (g - 1) * sum(hn[i] * hn[j] for i in range(r) for j in range(i + 1, r))
            for k in range(r - 1):
                upto = sum(hn[: k + 1])
                a_upto = sum(p[i] for p, assign in zip(pts, I) for i in range(3) if assign[i] <= k)
                M += (hn[k] + hn[k + 1]) * (math.floor(upto * (D + alpha_R) / Fraction(3) - a_upto) + 1)
            expo = 2 * sigma_p + 2 * (M - D * (3 - hn[-1]))
            num = LaurentPoly.monomial(expo) * (ONE - T ** 2)
            den = Counter()
            for k in range(r - 1):
                # 1/(t^(2a) - 1) = -1/(1 - t^(2a))
                num = -num
                den[_one_minus_t2k(hn[k] + hn[k + 1])] += 1
            for pnum, pden in pieces:
                num = num * pnum
                den.update(pden)
            acc.add(num, den)
    total = acc.value()
    if mode == FIXED:
        total = total.exact_div(jac_poincare(g))
    return total


# ---------------------------------------------------------------------------
# totals

def breakdown(params, mode=NONFIXED, delta0=None):
    """Separate contributions keyed by type (plus 'total')."""
    d0 = params.delta0 if delta0 is None else delta0
    if mode == NONFIXED:
        parts = {
            "111": contribution_111(params, NONFIXED, d0),
            "12": contribution_12(params, NONFIXED, d0),
            "21": contribution_21(params, NONFIXED, d0),
            "3": bundles3_poincare(params, NONFIXED),
        }
    elif mode == FIXED:
        parts = {
            "111_invariant": contribution_111(params, INVARIANT, d0),
            "111_variant": contribution_111(params, VARIANT, d0),
            "12": contribution_12(params, FIXED, d0),
            "21": contribution_21(params, FIXED, d0),
            "3": bundles3_poincare(params, FIXED),
        }
    else:
        raise ValidationError("mode must be 'nonfixed' or 'fixed'")
    total = ZERO
    for v in parts.values():
        total = total + v
    parts["total"] = total
    return parts


def higgs3_total(params, mode=NONFIXED):
    """Poincaré polynomial of the moduli space, computed for both residues
    of the degree mod 3 and required to agree."""
    one = breakdown(params, mode, 1)["total"]
    two = breakdown(params, mode, 2)["total"]
    if one != two:
        raise InexactError("totals differ between degree residues 1 and 2")
    return one


def euler_characteristic(poly):
    return poly(-1)
