"""Parabolic weight systems: exact rationals per marked point, with the
genericity and smallness predicates."""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import GenericityError, ValidationError

_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")

# exhaustive genericity search is 7^(k/2) per half; beyond this many
# weights we refuse rather than run for minutes
MAX_EXHAUSTIVE_WEIGHTS = 16


def parse_rational(text):
    """Parse "num/den" (or an integer) exactly; decimals are rejected."""
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise ValidationError("weights must be exact rationals 'num/den', got %r" % (text,))
    return Fraction(text.replace(" ", ""))


@dataclass(frozen=True)
class WeightSystem:
    """Weights per marked point.  Each entry of ``points`` is a tuple of
    rationals in [0, 1): ``(alpha, beta1, beta2)`` for triples, or
    ``(alpha1, alpha2, alpha3)`` (increasing) for rank-3 full flags."""

    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(Fraction(w) for w in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValidationError("at least one marked point is required")
        width = len(pts[0])
        for p in pts:
            if len(p) != width:
                raise ValidationError("every point needs the same number of weights")
            if any(not 0 <= w < 1 for w in p):
                raise ValidationError("weights must lie in [0, 1): %r" % (p,))
            if len(set(p)) != len(p):
                raise ValidationError("weights at a point must be distinct: %r" % (p,))

    @property
    def n(self):
        return len(self.points)

    def flat(self):
        return [w for p in self.points for w in p]

    def is_small(self):
        bound = Fraction(1, 12 * self.n)
        return all(w < bound for w in self.flat())

    def is_generic(self):
        return is_generic(self.flat())

    def require_generic(self):
        if not self.is_generic():
            raise GenericityError("weights admit an integer relation with coefficients <= 3")
        return self

    def to_json(self):
        return [[_fmt(w) for w in p] for p in self.points]


def _fmt(w):
    return "%d/%d" % (w.numerator, w.denominator)


def is_generic(weights, bound=3):
    """True iff no integer combination sum(c_k w_k) with |c_k| <= bound,
    not all zero, is an integer."""
    ws = [Fraction(w) for w in weights]
    L = math.lcm(*(w.denominator for w in ws))
    a = sorted(int(w * L) % L for w in ws)
    if a and a[0] == 0:
        return False
    # fast certificate: a super-increasing sequence with total below L
    running = 0
    for x in a:
        if x <= bound * running:
            break
        running += x
    else:
        if bound * running < L:
            return True
    if len(a) > MAX_EXHAUSTIVE_WEIGHTS:
        raise ValidationError(
            "cannot certify genericity of %d weights exhaustively" % len(a))
    half = len(a) // 2
    left, right = _residues(a[:half], L, bound), _residues(a[half:], L, bound)
    for r in left:
        if r == 0:
            if left[0] or right[0]:
                return False
        elif (-r) % L in right:
            return False
    return True


def _residues(a, L, bound):
    """Map residue -> whether it is reached by a nonzero coefficient vector.
    Residue 0 is always present (zero vector)."""
    reach = {0: False}
    for x in a:
        nxt = {}
        for r, nz in reach.items():
            for c in range(-bound, bound + 1):
                s = (r + c * x) % L
                flag = nz or c != 0
                nxt[s] = nxt.get(s, False) or flag
        reach = nxt
    return reach


def default_weights(n, per_point=3):
    """Deterministic small generic weights: w_k = 4^k / (12 n 4^(3n)) for
    k = 0 .. per_point*n - 1, listed increasingly within each point.

    Base 4 makes the numerators super-increasing with ratio > 3, which
    rules out any relation with coefficients bounded by 3."""
    if n < 1:
        raise ValidationError("need at least one marked point")
    K = 12 * n * 4 ** (per_point * n)
    pts = []
    for j in range(n):
        pts.append(tuple(Fraction(4 ** (per_point * j + i), K) for i in range(per_point)))
    return WeightSystem(tuple(pts))


def load_weights(path):
    """Read a JSON array of points, each an array of "num/den" strings."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return weights_from_json(data)


def weights_from_json(data):
    if not isinstance(data, list) or not all(isinstance(p, list) for p in data):
        raise ValidationError("weight file must be a JSON array of arrays")
    return WeightSystem(tuple(tuple(parse_rational(w) for w in p) for p in data))
