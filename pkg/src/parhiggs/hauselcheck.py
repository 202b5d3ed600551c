"""Hausel's conjectural rank-3 parabolic mixed Hodge polynomial H(q, t) and
its specialization at q = 1, compared against the Morse-theoretic total."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .exactalg import ONE, T, ZERO, LaurentPoly, QExpr, RatFunc, q_limit
from .higgs3 import HiggsParams, higgs3_total
from .symcurve import jac_poincare

CONFIRMED, REFUTED = "CONFIRMED", "REFUTED"


def _tp(k):
    return T ** k


def hausel_terms(g, n):
    """The six summands of H(q, t) as exact QExpr values.

    Each q-factor is a coefficient tuple in ascending powers of q, so
    ``(-1, 0, t^2)`` is ``q^2 t^2 - 1``.
    """
    if g < 0 or n < 1:
        raise ValidationError("need g >= 0 and n >= 1")
    t = _tp
    m1 = -ONE
    terms = [
        QExpr.from_factors(
            num=[(ONE, t(2))] * n + [(ONE, t(2), t(4))] * n
            + [(ONE, ZERO, ZERO, t(5))] * (2 * g) + [(ONE, ZERO, t(3))] * (2 * g),
            den=[(m1, ZERO, ZERO, t(6)), (m1, ZERO, ZERO, t(4)),
                 (m1, ZERO, t(4)), (m1, ZERO, t(2))]),
        QExpr.from_factors(
            num=[(ONE, ONE)] * n + [(ONE, ONE, ONE)] * n
            + [(ONE, ZERO, ZERO, T)] * (2 * g) + [(ONE, ZERO, T)] * (2 * g),
            den=[(m1, ZERO, ZERO, t(2)), (m1, ZERO, ZERO, ONE),
                 (m1, ZERO, t(2)), (m1, ZERO, ONE)],
            scalar=t(6 * n + 12 * g - 12), shift=3 * n + 6 * g - 6),
        QExpr.from_factors(
            num=[(2 * ONE, ONE + t(2), 2 * t(2))] * n
            + [(ONE, ZERO, ZERO, t(3))] * (2 * g) + [(ONE, T)] * (2 * g),
            den=[(m1, ZERO, ZERO, t(4)), (m1, ZERO, ZERO, t(2)), (m1, t(2)), (m1, ONE)],
            scalar=t(4 * n + 8 * g - 8), shift=2 * n + 4 * g - 4),
        QExpr.from_factors(
            num=[(ONE, T)] * (4 * g),
            den=[(m1, t(2))] * 2 + [(m1, ONE)] * 2,
            scalar=RatFunc(6 ** n * t(6 * n + 12 * g - 12), 3), shift=3 * n + 6 * g - 6),
        QExpr.from_factors(
            num=[(ONE, t(2))] * n + [(ONE, ZERO, t(3))] * (2 * g) + [(ONE, T)] * (2 * g),
            den=[(m1, ZERO, t(4)), (m1, ZERO, t(2)), (m1, t(2)), (m1, ONE)],
            scalar=-(3 ** n) * t(4 * n + 8 * g - 8), shift=2 * n + 4 * g - 4),
        QExpr.from_factors(
            num=[(ONE, ONE)] * n + [(ONE, ZERO, T)] * (2 * g) + [(ONE, T)] * (2 * g),
            den=[(m1, ZERO, t(2)), (m1, ZERO, ONE), (m1, t(2)), (m1, ONE)],
            scalar=-(3 ** n) * t(6 * n + 12 * g - 12), shift=3 * n + 6 * g - 6),
    ]
    return terms


def hausel_at_q1(g, n):
    """H(1, t): exact limit as q -> 1; must be a polynomial with
    nonnegative integer coefficients."""
    value = q_limit(hausel_terms(g, n))
    if not value.is_polynomial() or any(c < 0 for _, c in value.items()):
        raise ValidationError("H(1, t) is not a polynomial with nonnegative coefficients: %s" % value)
    return value


@dataclass(frozen=True)
class HauselReport:
    g: int
    n: int
    conjecture: LaurentPoly
    computed: LaurentPoly

    @property
    def status(self):
        return CONFIRMED if self.conjecture == self.computed else REFUTED

    @property
    def matches_with_jacobian(self):
        """H(1,t) (1+t)^(2g) == P_t: the displayed formula carries no
        Jacobian factor in its first summand."""
        return self.conjecture * jac_poincare(self.g) == self.computed

    def to_json(self):
        return {"genus": self.g, "points": self.n, "status": self.status,
                "matches_with_jacobian_factor": self.matches_with_jacobian,
                "hausel_q1": str(self.conjecture), "poincare": str(self.computed)}

    def __str__(self):
        line = "hausel g=%d n=%d: %s" % (self.g, self.n, self.status)
        if self.status == REFUTED:
            line += "\n  H(1,t)          = %s\n  P_t             = %s" % (self.conjecture, self.computed)
            line += "\n  H(1,t)(1+t)^2g == P_t: %s" % self.matches_with_jacobian
        return line


def compare(g, n):
    return HauselReport(g, n, hausel_at_q1(g, n), higgs3_total(HiggsParams(g, n)))
