"""Exact arithmetic: Laurent polynomials in t, truncated auxiliary series,
rational functions of t, expressions in q over those, and the q -> 1 limit.

Everything here is integer (or rational) exact.  Values are immutable.
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import reduce
from numbers import Integral, Rational

from .errors import InexactError, TruncationError, ValidationError
from .kernels import convolve

__all__ = [
    "LaurentPoly", "T", "ONE", "ZERO", "AuxSeries", "geom_expand", "series_mul",
    "coeff_at", "RatFunc", "QExpr", "q_limit", "poly_gcd", "FactoredSum",
]


# ---------------------------------------------------------------------------
# Laurent polynomials in t

class LaurentPoly:
    """Finite Laurent polynomial in ``t`` with integer coefficients.

    Stored densely as a lowest exponent plus a coefficient tuple with no
    zero at either end.  The zero polynomial has an empty tuple.
    """

    __slots__ = ("_lo", "_c")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, Integral):
            coeffs = {0: coeffs}
        items = {int(k): int(v) for k, v in dict(coeffs).items() if v}
        if not items:
            self._lo, self._c = 0, ()
            return
        lo, hi = min(items), max(items)
        self._lo = lo
        self._c = tuple(items.get(k, 0) for k in range(lo, hi + 1))

    @classmethod
    def _raw(cls, lo, coeffs):
        # trims zeros at both ends; coeffs is any sequence of ints
        i, j = 0, len(coeffs)
        while i < j and not coeffs[i]:
            i += 1
        while j > i and not coeffs[j - 1]:
            j -= 1
        p = object.__new__(cls)
        if i == j:
            p._lo, p._c = 0, ()
        else:
            p._lo, p._c = lo + i, tuple(coeffs[i:j])
        return p

    @classmethod
    def from_list(cls, coeffs, lo=0):
        """Build from ascending coefficients starting at exponent ``lo``."""
        return cls._raw(lo, [int(c) for c in coeffs])

    @classmethod
    def monomial(cls, k, c=1):
        return cls._raw(k, (int(c),))

    @classmethod
    def const(cls, c):
        return cls._raw(0, (int(c),))

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self):
        """Mapping exponent -> nonzero coefficient."""
        return {self._lo + i: c for i, c in enumerate(self._c) if c}

    @property
    def window(self):
        """``(min_exp, max_exp)``, or None for the zero polynomial."""
        if not self._c:
            return None
        return (self._lo, self._lo + len(self._c) - 1)

    @property
    def min_exp(self):
        return self._lo if self._c else None

    @property
    def degree(self):
        return self._lo + len(self._c) - 1 if self._c else None

    def coeff(self, k):
        i = k - self._lo
        if 0 <= i < len(self._c):
            return self._c[i]
        return 0

    def items(self):
        return ((self._lo + i, c) for i, c in enumerate(self._c) if c)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def is_polynomial(self):
        return not self._c or self._lo >= 0

    def is_monomial(self):
        return len(self._c) == 1

    def ascending(self):
        """Coefficients of t^0 .. t^degree (polynomials only)."""
        if not self._c:
            return []
        if self._lo < 0:
            raise ValidationError("negative exponents present: %s" % self)
        return [0] * self._lo + list(self._c)

    def leading_coeff(self):
        return self._c[-1] if self._c else 0

    def content(self):
        return reduce(math.gcd, self._c, 0)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, Integral):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        lo = min(self._lo, other._lo)
        hi = max(self._lo + len(self._c), other._lo + len(other._c))
        out = [0] * (hi - lo)
        for i, c in enumerate(self._c, self._lo - lo):
            out[i] = c
        for i, c in enumerate(other._c, other._lo - lo):
            out[i] += c
        return LaurentPoly._raw(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self._lo, [-c for c in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Integral):
            if not other:
                return ZERO
            return LaurentPoly._raw(self._lo, [c * other for c in self._c])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        if len(other._c) == 1:
            k = other._c[0]
            return LaurentPoly._raw(self._lo + other._lo, [c * k for c in self._c])
        if len(self._c) == 1:
            k = self._c[0]
            return LaurentPoly._raw(self._lo + other._lo, [c * k for c in other._c])
        return LaurentPoly._raw(self._lo + other._lo, convolve(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, Integral):
            return NotImplemented
        if e < 0:
            if len(self._c) == 1 and self._c[0] in (1, -1):
                return LaurentPoly._raw(self._lo * e, (self._c[0] ** (-e),))
            raise ValidationError("negative power of a non-unit")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by t^k."""
        if not self._c:
            return self
        return LaurentPoly._raw(self._lo + k, self._c)

    def reflect(self):
        """P(1/t)."""
        if not self._c:
            return self
        return LaurentPoly._raw(-self.degree, self._c[::-1])

    def __call__(self, x):
        """Evaluate at an integer or rational point."""
        if not self._c:
            return 0
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        if self._lo >= 0:
            return acc * x ** self._lo
        return Fraction(acc) / Fraction(x) ** (-self._lo)

    def divmod(self, other):
        """Division with remainder treating both as polynomials after
        pulling out their lowest powers of t.  Coefficients of the quotient
        must be integral at each step; raises InexactError otherwise.

        Returns (q, r) with ``self = q*other + r`` where ``r`` has lower
        degree than ``other`` once both are normalized.
        """
        if not other._c:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._c:
            return ZERO, ZERO
        b = other._c
        lb = other._lo
        a = list(self._c)
        la = self._lo
        db = len(b) - 1
        lead = b[-1]
        nq = len(a) - db
        if nq <= 0:
            return ZERO, self
        quo = [0] * nq
        for i in range(nq - 1, -1, -1):
            c = a[i + db]
            if c:
                qc, rem = divmod(c, lead)
                if rem:
                    raise InexactError("non-integral quotient coefficient")
                quo[i] = qc
                for j in range(db + 1):
                    a[i + j] -= qc * b[j]
        return LaurentPoly._raw(la - lb, quo), LaurentPoly._raw(la, a[:db])

    def exact_div(self, other):
        """Exact quotient; raises InexactError on a nonzero remainder."""
        if isinstance(other, Integral):
            other = LaurentPoly.const(other)
        q, r = self.divmod(other)
        if r:
            raise InexactError("inexact division of %s by %s" % (self, other))
        return q

    # -- comparisons / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._lo == other._lo and self._c == other._c
        if isinstance(other, Integral):
            return self == LaurentPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self._lo, self._c))

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, c in self.items():
            if k == 0:
                body = str(abs(c))
            else:
                mono = "t" if k == 1 else "t^%d" % k if k > 0 else "t^(%d)" % k
                body = mono if abs(c) == 1 else "%d*%s" % (abs(c), mono)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "LaurentPoly(%r)" % str(self)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1)


def _poly_primitive(p):
    c = p.content()
    if p.leading_coeff() < 0:
        c = -c
    return p if c == 1 else LaurentPoly._raw(p._lo, [x // c for x in p._c])


def _prem(a, b):
    # pseudo-remainder of ascending-normalized polynomials (min_exp 0)
    da, db = a.degree, b.degree
    if da < db:
        return a
    lead = b.leading_coeff()
    scale = lead ** (da - db + 1)
    _, r = (a * scale).divmod(b)
    return r


def _unit_normal(p):
    p = p.shift(-p._lo)
    return -p if p.leading_coeff() < 0 else p


def poly_gcd(a, b):
    """gcd in Z[t, 1/t], normalized to a polynomial with nonzero constant
    term and positive leading coefficient (primitive PRS)."""
    if not a:
        return _unit_normal(b) if b else ZERO
    if not b:
        return _unit_normal(a)
    content = math.gcd(a.content(), b.content())
    a = _poly_primitive(a.shift(-a._lo))
    b = _poly_primitive(b.shift(-b._lo))
    if a.degree < b.degree:
        a, b = b, a
    while b and b.degree > 0:
        r = _prem(a, b)
        a, b = b, (_poly_primitive(r.shift(-r._lo)) if r else ZERO)
    if b:
        return LaurentPoly.const(content)
    return _poly_primitive(a) * content


# ---------------------------------------------------------------------------
# Truncated auxiliary series

def _as_poly(c):
    if isinstance(c, LaurentPoly):
        return c
    if isinstance(c, Integral):
        return LaurentPoly.const(c)
    raise TypeError("expected LaurentPoly or int, got %r" % (c,))


class AuxSeries:
    """Series in one or two auxiliary variables with LaurentPoly
    coefficients.

    ``bounds[i]`` is the largest exponent of variable ``i`` up to which the
    series is known exactly; ``None`` means the series is an exact
    (finite) polynomial in that variable.  Terms above a bound are
    discarded.
    """

    __slots__ = ("vars", "terms", "bounds")

    def __init__(self, vars, terms, bounds=None):
        vars = tuple(vars)
        if not 1 <= len(vars) <= 2:
            raise ValidationError("1 or 2 auxiliary variables supported")
        if bounds is None:
            bounds = (None,) * len(vars)
        bounds = tuple(None if b is None else int(b) for b in bounds)
        if len(bounds) != len(vars):
            raise ValidationError("one bound per variable")
        kept = {}
        for e, c in dict(terms).items():
            e = (e,) if isinstance(e, Integral) else tuple(int(x) for x in e)
            if len(e) != len(vars):
                raise ValidationError("exponent arity mismatch: %r" % (e,))
            c = _as_poly(c)
            if c and all(b is None or x <= b for x, b in zip(e, bounds)):
                kept[e] = kept.get(e, ZERO) + c
        self.vars = vars
        self.terms = {e: c for e, c in kept.items() if c}
        self.bounds = bounds

    @classmethod
    def one(cls, vars, bounds=None):
        return cls(vars, {(0,) * len(tuple(vars)): ONE}, bounds)

    @classmethod
    def monomial(cls, vars, exps, coeff=1, bounds=None):
        return cls(vars, {tuple(exps): coeff}, bounds)

    def lo(self):
        """Per-variable lowest exponent present (None = exact zero)."""
        out = []
        for i, b in enumerate(self.bounds):
            if self.terms:
                out.append(min(e[i] for e in self.terms))
            else:
                out.append(None if b is None else b + 1)
        return tuple(out)

    def _check(self, other):
        if not isinstance(other, AuxSeries):
            raise TypeError("AuxSeries expected")
        if other.vars != self.vars:
            raise ValidationError("variable mismatch: %r vs %r" % (self.vars, other.vars))

    def truncate(self, bounds):
        nb = tuple(b if n is None else n if b is None else min(b, n)
                   for b, n in zip(self.bounds, bounds))
        return AuxSeries(self.vars, self.terms, nb)

    def __add__(self, other):
        self._check(other)
        nb = tuple(a if b is None else b if a is None else min(a, b)
                   for a, b in zip(self.bounds, other.bounds))
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, ZERO) + c
        return AuxSeries(self.vars, terms, nb)

    def __neg__(self):
        return AuxSeries(self.vars, {e: -c for e, c in self.terms.items()}, self.bounds)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _as_poly(c)
        return AuxSeries(self.vars, {e: v * c for e, v in self.terms.items()}, self.bounds)

    def __mul__(self, other):
        if isinstance(other, (LaurentPoly, Integral)):
            return self.scale(other)
        return series_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, Integral)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e):
        result = AuxSeries.one(self.vars, self.bounds)
        for _ in range(e):
            result = result * self
        return result

    def div_one_minus(self, mono, coeff=1):
        """self / (1 - coeff * aux^mono), via the recurrence
        R[e] = S[e] + coeff * R[e - mono]."""
        mono = _check_geom_mono(mono, len(self.vars))
        coeff = _as_poly(coeff)
        for m, b in zip(mono, self.bounds):
            if m and b is None:
                raise TruncationError("unbounded variable in a geometric expansion")
        keys = set()
        for e in self.terms:
            cur = e
            while all(b is None or x <= b for x, b in zip(cur, self.bounds)):
                keys.add(cur)
                cur = tuple(x + m for x, m in zip(cur, mono))
        weight = [i for i, m in enumerate(mono) if m][0]
        out = {}
        for e in sorted(keys, key=lambda k: k[weight]):
            prev = out.get(tuple(x - m for x, m in zip(e, mono)))
            v = self.terms.get(e, ZERO)
            if prev is not None:
                v = v + prev * coeff
            if v:
                out[e] = v
        return AuxSeries(self.vars, out, self.bounds)

    def coeff_at(self, e):
        return coeff_at(self, e)

    def __eq__(self, other):
        if not isinstance(other, AuxSeries):
            return NotImplemented
        return (self.vars, self.terms, self.bounds) == (other.vars, other.terms, other.bounds)

    def __repr__(self):
        body = ", ".join("%r: %s" % (e, c) for e, c in sorted(self.terms.items()))
        return "AuxSeries(%r, {%s}, bounds=%r)" % (self.vars, body, self.bounds)


def _check_geom_mono(mono, arity):
    mono = (mono,) if isinstance(mono, Integral) else tuple(int(m) for m in mono)
    if len(mono) != arity:
        raise ValidationError("monomial arity mismatch")
    if any(m < 0 for m in mono) or sum(mono) < 1:
        raise ValidationError(
            "geometric expansion needs a monomial of positive auxiliary degree")
    return mono


def geom_expand(mono, coeff, vars, bounds):
    """1/(1 - coeff * aux^mono) truncated to ``bounds``."""
    return AuxSeries.one(vars, bounds).div_one_minus(mono, coeff)


def series_mul(a, b):
    """Truncated product.  The result is known exactly up to
    min(bound_a + lo_b, bound_b + lo_a) in each variable."""
    a._check(b)
    la, lb = a.lo(), b.lo()
    bounds = []
    for ba, bb, xa, xb in zip(a.bounds, b.bounds, la, lb):
        cands = []
        if ba is not None and xb is not None:
            cands.append(ba + xb)
        if bb is not None and xa is not None:
            cands.append(bb + xa)
        bounds.append(min(cands) if cands else None)
    bounds = tuple(bounds)
    out = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if all(bd is None or x <= bd for x, bd in zip(e, bounds)):
                prod = ca * cb
                prev = out.get(e)
                out[e] = prod if prev is None else prev + prod
    return AuxSeries(a.vars, out, bounds)


def coeff_at(s, e):
    """Coefficient of aux^e.  Raises TruncationError when ``e`` lies above
    a truncation bound: the caller must enlarge its bounds."""
    e = (e,) if isinstance(e, Integral) else tuple(int(x) for x in e)
    if len(e) != len(s.vars):
        raise ValidationError("exponent arity mismatch")
    for x, b in zip(e, s.bounds):
        if b is not None and x > b:
            raise TruncationError("exponent %r outside known window %r" % (e, s.bounds))
    return s.terms.get(e, ZERO)


# ---------------------------------------------------------------------------
# Rational functions of t

class RatFunc:
    """num/den with num, den in Z[t, 1/t], normalized so that den is a
    polynomial with nonzero constant term and positive leading coefficient
    and num, den share no common factor (polynomial or integer)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = _as_ratpart(num), _as_ratpart(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        num = num.shift(-den._lo)
        den = den.shift(-den._lo)
        g = poly_gcd(num, den)
        if g.degree:
            num = num.exact_div(g)
            den = den.exact_div(g)
        c = math.gcd(num.content(), den.content())
        if den.leading_coeff() < 0:
            c = -c
        if c != 1:
            num = LaurentPoly._raw(num._lo, [x // c for x in num._c])
            den = LaurentPoly._raw(den._lo, [x // c for x in den._c])
        self.num, self.den = num, den

    @classmethod
    def of(cls, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Rational) and not isinstance(x, Integral):
            return cls(x.numerator, x.denominator)
        return cls(x)

    def __add__(self, other):
        other = RatFunc.of(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFunc)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        return self + (-RatFunc.of(other))

    def __rsub__(self, other):
        return RatFunc.of(other) - self

    def __mul__(self, other):
        other = RatFunc.of(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc.of(other)
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.of(other) / self

    def __pow__(self, e):
        if e < 0:
            return RatFunc(self.den ** (-e), self.num ** (-e))
        return RatFunc(self.num ** e, self.den ** e)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (Integral, LaurentPoly, Fraction)):
            other = RatFunc.of(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_laurent(self):
        return self.den == ONE

    def to_laurent(self):
        if not self.is_laurent():
            raise InexactError("not a Laurent polynomial: (%s)/(%s)" % (self.num, self.den))
        return self.num

    def __call__(self, x):
        return Fraction(self.num(x)) / Fraction(self.den(x))

    def __repr__(self):
        return "RatFunc(%r, %r)" % (str(self.num), str(self.den))


def _as_ratpart(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, Integral):
        return LaurentPoly.const(x)
    raise TypeError("expected LaurentPoly or int, got %r" % (x,))


# ---------------------------------------------------------------------------
# Polynomials in q over Z[t, 1/t]: tuples of LaurentPoly, ascending in q

def _qp_trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def _qp_mul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _qp_trim(out)


def _qp_content(p):
    return reduce(poly_gcd, p, ZERO)


def _qp_prem(a, b):
    lead = b[-1]
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        k = len(a) - 1 - db
        a = [x * lead for x in a]
        for j, y in enumerate(b):
            a[k + j] = a[k + j] - c * y
        a = list(_qp_trim(a))
    return tuple(a)


def _qp_primitive(p):
    c = _qp_content(p)
    if c == ONE:
        return p
    return tuple(x.exact_div(c) for x in p)


def _qp_gcd(a, b):
    """Primitive gcd in Z[t][q] (primitive PRS in q; gcd of contents
    ignored, since only the q-part matters for cancellation)."""
    a, b = _qp_primitive(a), _qp_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _qp_prem(a, b)
        if not r:
            return b
        a, b = b, _qp_primitive(r)
    return (ONE,)


def _qp_exact_div(a, b):
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    quo = [ZERO] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db].exact_div(lead) if a[k + db] else ZERO
        quo[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] = a[k + j] - c * y
    if any(a):
        raise InexactError("inexact division in Z[t][q]")
    return _qp_trim(quo)


def _qp_at_one_plus_s(p, order):
    """Coefficients of p(1+s) in s, up to s^order inclusive."""
    out = []
    for k in range(order + 1):
        acc = ZERO
        for j in range(k, len(p)):
            if p[j]:
                acc = acc + p[j] * math.comb(j, k)
        out.append(acc)
    return out


def _qp_valuation_at_one(p):
    k = 0
    while True:
        c = _qp_at_one_plus_s(p, k)[k]
        if c:
            return k
        k += 1
        if k >= len(p):
            raise InexactError("zero polynomial in q")


class QExpr:
    """``scalar * q**shift * prod(num) / prod(den)`` where each factor is a
    polynomial in q with coefficients in Z[t, 1/t] and scalar is a RatFunc.

    Rational-function coefficients supplied to :meth:`from_factors` are
    cleared into the scalar.  Factors are made primitive, common q-factors
    between numerator and denominator are cancelled pairwise (this gives
    gcd(num, den) = 1 because coprimality of products reduces to
    coprimality of their factors), and powers of q are collected in
    ``shift``.
    """

    __slots__ = ("scalar", "shift", "num_factors", "den_factors")

    def __init__(self, scalar, shift, num_factors, den_factors):
        self.scalar = scalar
        self.shift = shift
        self.num_factors = num_factors
        self.den_factors = den_factors

    @classmethod
    def from_factors(cls, num=(), den=(), scalar=1, shift=0):
        scalar = RatFunc.of(scalar)
        nf, df = [], []
        for factors, sink, is_num in ((num, nf, True), (den, df, False)):
            for f in factors:
                coeffs = [RatFunc.of(c) for c in f]
                if not any(coeffs):
                    if is_num:
                        return cls(RatFunc(0), 0, (), ())
                    raise ZeroDivisionError("zero factor in denominator")
                dens = ONE
                for c in coeffs:
                    g = poly_gcd(dens, c.den)
                    dens = dens * c.den.exact_div(g)
                poly = _qp_trim([(c * dens).to_laurent() for c in coeffs])
                cont = _qp_content(poly)
                low = min(c.min_exp for c in poly if c)
                cont = cont.shift(low)
                poly = tuple(c.exact_div(cont) for c in poly)
                if poly[-1].leading_coeff() < 0:
                    poly = tuple(-c for c in poly)
                    cont = -cont
                lift = RatFunc(cont, dens)
                scalar = scalar * lift if is_num else scalar / lift
                # pull out powers of q
                k = 0
                while not poly[k]:
                    k += 1
                shift += k if is_num else -k
                poly = poly[k:]
                if len(poly) > 1:
                    sink.append(poly)
        # pairwise cancellation
        i = 0
        while i < len(nf):
            for j, d in enumerate(df):
                g = _qp_gcd(nf[i], d)
                if len(g) > 1:
                    nf[i] = _qp_exact_div(nf[i], g)
                    df[j] = _qp_exact_div(d, g)
                    break
            else:
                i += 1
                continue
        for f in nf:
            if len(f) == 1:
                scalar = scalar * RatFunc(f[0])
        for f in df:
            if len(f) == 1:
                scalar = scalar / RatFunc(f[0])
        nf = tuple(f for f in nf if len(f) > 1)
        df = tuple(f for f in df if len(f) > 1)
        return cls(scalar, shift, nf, df)

    def numerator(self):
        """Expanded numerator (q-shift excluded) as a tuple of RatFunc."""
        p = (ONE,)
        for f in self.num_factors:
            p = _qp_mul(p, f)
        return tuple(RatFunc(c) * self.scalar for c in p)

    def denominator(self):
        p = (ONE,)
        for f in self.den_factors:
            p = _qp_mul(p, f)
        return tuple(RatFunc(c) for c in p)

    def evaluate(self, q, t):
        """Exact value at rational q, t."""
        num = Fraction(self.scalar(t))
        for f in self.num_factors:
            num *= sum(Fraction(c(t)) * Fraction(q) ** i for i, c in enumerate(f))
        den = Fraction(1)
        for f in self.den_factors:
            den *= sum(Fraction(c(t)) * Fraction(q) ** i for i, c in enumerate(f))
        return num / den * Fraction(q) ** self.shift

    def q_valuation(self):
        """Order of vanishing of the denominator at q = 1."""
        return sum(_qp_valuation_at_one(f) for f in self.den_factors)

    def __eq__(self, other):
        if not isinstance(other, QExpr):
            return NotImplemented
        # cross-multiplication with shifts aligned
        lhs_n, lhs_d = self.numerator(), self.denominator()
        rhs_n, rhs_d = other.numerator(), other.denominator()
        k = self.shift - other.shift
        left = _rf_qmul(lhs_n, rhs_d)
        right = _rf_qmul(rhs_n, lhs_d)
        if k > 0:
            left = (RatFunc(0),) * k + left
        elif k < 0:
            right = (RatFunc(0),) * (-k) + right
        return _rf_trim(left) == _rf_trim(right)

    __hash__ = None

    def __repr__(self):
        return "QExpr(scalar=%r, shift=%d, num=%d factors, den=%d factors)" % (
            self.scalar, self.shift, len(self.num_factors), len(self.den_factors))


def _rf_qmul(a, b):
    out = [RatFunc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return tuple(out)


def _rf_trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


class FactoredSum:
    """Accumulates fractions whose denominators are products of known
    polynomial factors, using a common multiple built from the factor
    multisets instead of gcd computations."""

    def __init__(self):
        self.num = ZERO
        self.den = Counter()

    @staticmethod
    def _key(f):
        return -f if f.leading_coeff() < 0 else f

    def add(self, num, den_factors):
        sign = 1
        den = Counter()
        for f, e in den_factors.items():
            if f.leading_coeff() < 0 and e % 2:
                sign = -sign
            den[self._key(f)] += e
        if sign < 0:
            num = -num
        target = self.den | den
        scale_old = ONE
        for f, e in target.items():
            if e > self.den[f]:
                scale_old = scale_old * f ** (e - self.den[f])
        scale_new = ONE
        for f, e in target.items():
            if e > den[f]:
                scale_new = scale_new * f ** (e - den[f])
        self.num = self.num * scale_old + num * scale_new
        self.den = target

    def is_zero(self):
        return not self.num

    def value(self):
        den = ONE
        for f, e in self.den.items():
            den = den * f ** e
        return self.num.exact_div(den)


def q_limit(terms):
    """Sum of the QExpr ``terms`` at q = 1.

    Substitutes q = 1 + s, expands every term as a Laurent series in s with
    coefficients in Q(t) up to s^0, checks that all negative powers of s
    cancel in the sum and returns the s^0 coefficient, which must be a
    Laurent polynomial in t with integer coefficients.
    """
    by_order = {}
    for term in terms:
        if not term.scalar:
            continue
        vnum = 0
        vden = 0
        nums = []
        dens = []
        for f in term.num_factors:
            v = _qp_valuation_at_one(f)
            vnum += v
            nums.append((f, v))
        for f in term.den_factors:
            v = _qp_valuation_at_one(f)
            vden += v
            dens.append((f, v))
        val = vnum - vden
        if val > 0:
            continue
        need = -val
        a = [LaurentPoly(0)] * (need + 1)
        a[0] = term.scalar.num
        for f, v in nums:
            a = _trunc_mul(a, _qp_at_one_plus_s(f, v + need)[v:], need)
        # q^shift = (1+s)^shift; for negative shift this is a unit series
        a = _trunc_mul(a, [LaurentPoly.const(c) for c in _binom_series(term.shift, need)], need)
        b = [ONE] + [ZERO] * need
        b0_factors = Counter()
        if term.scalar.den != ONE:
            b0_factors[term.scalar.den] += 1
            b = _trunc_mul(b, [term.scalar.den], need)
        for f, v in dens:
            ser = _qp_at_one_plus_s(f, v + need)[v:]
            b0_factors[ser[0]] += 1
            b = _trunc_mul(b, ser, need)
        # quotient a/b: q_k = r_k / b0^(k+1)
        b0 = b[0]
        r = []
        for k in range(need + 1):
            acc = a[k] * b0 ** k
            for j in range(1, k + 1):
                if b[j]:
                    acc = acc - b[j] * r[k - j] * b0 ** (j - 1)
            r.append(acc)
        for k in range(need + 1):
            order = val + k
            if not r[k]:
                continue
            den = Counter({f: e * (k + 1) for f, e in b0_factors.items()})
            by_order.setdefault(order, FactoredSum()).add(r[k], den)
    for order, acc in sorted(by_order.items()):
        if order < 0 and not acc.is_zero():
            # a nonzero numerator over a nonzero denominator is a genuine pole
            raise InexactError("pole of order %d at q=1 does not cancel" % -order)
    if 0 not in by_order:
        return ZERO
    return by_order[0].value()


def _trunc_mul(a, b, order):
    out = [ZERO] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if x:
            for j, y in enumerate(b[:order + 1 - i]):
                if y:
                    out[i + j] = out[i + j] + x * y
    return out


def _binom_series(k, order):
    # coefficients of (1+s)^k for an integer k of either sign
    if k >= 0:
        return [math.comb(k, j) for j in range(order + 1)]
    return [(-1) ** j * math.comb(j - k - 1, j) for j in range(order + 1)]
