"""Outward-rounded interval arithmetic on MPFR floats.

Endpoints are ``gmpy2.mpfr`` values (``BigFloat``). Each endpoint is computed
in its own directed-rounding context (down for ``lo``, up for ``hi``). MPFR
rounds every elementary operation correctly, including log, exp and roots,
so the enclosure is rigorous without extra slack.

Precision is carried by the interval and passed explicitly to constructors;
no global context is touched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr, mpz

BigFloat = mpfr

DEFAULT_PRECISION = 128


class IntervalDomainError(ValueError):
    pass


@lru_cache(maxsize=None)
def _ctx(prec: int):
    down = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
    return down, up


def _exact(v: mpfr) -> Fraction:
    n, d = v.as_integer_ratio()
    return Fraction(int(n), int(d))


@dataclass(frozen=True)
class RigorInterval:
    lo: mpfr
    hi: mpfr
    prec: int

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    # -- inspection -------------------------------------------------------

    @property
    def width(self) -> mpfr:
        return _ctx(self.prec)[1].sub(self.hi, self.lo)

    def mid(self) -> Fraction:
        return (_exact(self.lo) + _exact(self.hi)) / 2

    def contains(self, q) -> bool:
        if isinstance(q, RigorInterval):
            return self.lo <= q.lo and q.hi <= self.hi
        q = Fraction(q)
        return _exact(self.lo) <= q <= _exact(self.hi)

    def subset_of(self, other: RigorInterval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersects(self, other: RigorInterval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def magnitude(self) -> mpfr:
        return max(abs(self.lo), abs(self.hi))

    def mignitude(self) -> mpfr:
        if self.contains_zero():
            return mpfr(0)
        return min(abs(self.lo), abs(self.hi))

    def relative_width(self) -> float:
        m = self.mignitude()
        if m == 0:
            return float("inf")
        return float(self.width / m)

    # -- operators --------------------------------------------------------

    def _coerce(self, other) -> RigorInterval:
        if isinstance(other, RigorInterval):
            return other
        return iv_from_rational(other, self.prec)

    def __add__(self, other):
        return iv_add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return iv_sub(self, self._coerce(other))

    def __rsub__(self, other):
        return iv_sub(self._coerce(other), self)

    def __mul__(self, other):
        return iv_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return iv_div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return iv_div(self._coerce(other), self)

    def __neg__(self):
        return RigorInterval(-self.hi, -self.lo, self.prec)

    def __repr__(self) -> str:
        return f"RigorInterval({format_interval(self, 20)})"


def _prec(a: RigorInterval, b: RigorInterval) -> int:
    return max(a.prec, b.prec)


def iv_point(v: mpfr, prec: int) -> RigorInterval:
    return RigorInterval(v, v, prec)


def iv_from_rational(q, prec: int = DEFAULT_PRECISION) -> RigorInterval:
    """Tightest ``prec``-bit enclosure of an exact rational."""
    q = Fraction(q)
    down, up = _ctx(prec)
    n, d = mpz(q.numerator), mpz(q.denominator)
    return RigorInterval(down.div(n, d), up.div(n, d), prec)


def iv_span(lo, hi, prec: int = DEFAULT_PRECISION) -> RigorInterval:
    """Enclosure of the real segment ``[lo, hi]`` with rational endpoints."""
    return RigorInterval(iv_from_rational(lo, prec).lo, iv_from_rational(hi, prec).hi, prec)


def iv_round(a: RigorInterval, prec: int) -> RigorInterval:
    """Round endpoints outward to ``prec`` bits."""
    down, up = _ctx(prec)
    return RigorInterval(down.plus(a.lo), up.plus(a.hi), prec)


def iv_hull(a: RigorInterval, b: RigorInterval) -> RigorInterval:
    return RigorInterval(min(a.lo, b.lo), max(a.hi, b.hi), _prec(a, b))


def iv_add(a: RigorInterval, b: RigorInterval) -> RigorInterval:
    p = _prec(a, b)
    down, up = _ctx(p)
    return RigorInterval(down.add(a.lo, b.lo), up.add(a.hi, b.hi), p)


def iv_sub(a: RigorInterval, b: RigorInterval) -> RigorInterval:
    p = _prec(a, b)
    down, up = _ctx(p)
    return RigorInterval(down.sub(a.lo, b.hi), up.sub(a.hi, b.lo), p)


def iv_mul(a: RigorInterval, b: RigorInterval) -> RigorInterval:
    p = _prec(a, b)
    down, up = _ctx(p)
    pairs = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)]
    return RigorInterval(
        min(down.mul(x, y) for x, y in pairs), max(up.mul(x, y) for x, y in pairs), p
    )


def iv_div(a: RigorInterval, b: RigorInterval) -> RigorInterval:
    if b.contains_zero():
        raise ZeroDivisionError("interval division by an interval containing zero")
    p = _prec(a, b)
    down, up = _ctx(p)
    pairs = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)]
    return RigorInterval(
        min(down.div(x, y) for x, y in pairs), max(up.div(x, y) for x, y in pairs), p
    )


def iv_powi(a: RigorInterval, n: int) -> RigorInterval:
    """Integer power by repeated multiplication (exact dependency for even n)."""
    if n < 0:
        return iv_div(iv_from_rational(1, a.prec), iv_powi(a, -n))
    result = iv_from_rational(1, a.prec)
    base = a
    while n:
        if n & 1:
            result = iv_mul(result, base)
        n >>= 1
        if n:
            base = iv_mul(base, base) if not base.contains_zero() else _square(base)
    return result


def _square(a: RigorInterval) -> RigorInterval:
    down, up = _ctx(a.prec)
    hi = max(up.mul(a.lo, a.lo), up.mul(a.hi, a.hi))
    return RigorInterval(mpfr(0), hi, a.prec)


def _monotone(fn_name: str, a: RigorInterval) -> RigorInterval:
    down, up = _ctx(a.prec)
    return RigorInterval(getattr(down, fn_name)(a.lo), getattr(up, fn_name)(a.hi), a.prec)


def iv_ln(a: RigorInterval) -> RigorInterval:
    if not a.is_positive():
        raise IntervalDomainError("ln of an interval not strictly positive")
    return _monotone("log", a)


def iv_exp(a: RigorInterval) -> RigorInterval:
    return _monotone("exp", a)


def iv_expm1(a: RigorInterval) -> RigorInterval:
    """``exp(a) - 1`` without cancellation near zero."""
    return _monotone("expm1", a)


def iv_sqrt(a: RigorInterval) -> RigorInterval:
    if a.lo < 0:
        raise IntervalDomainError("sqrt of an interval with negative part")
    return _monotone("sqrt", a)


def iv_root6(a: RigorInterval) -> RigorInterval:
    if a.lo < 0:
        raise IntervalDomainError("sixth root of an interval with negative part")
    down, up = _ctx(a.prec)
    return RigorInterval(down.rootn(a.lo, 6), up.rootn(a.hi, 6), a.prec)


def iv_pow(a: RigorInterval, b) -> RigorInterval:
    """``a**b = exp(b ln a)`` for ``a > 0``."""
    if not a.is_positive():
        raise IntervalDomainError("pow needs a strictly positive base")
    if not isinstance(b, RigorInterval):
        b = iv_from_rational(b, a.prec)
    return iv_exp(iv_mul(b, iv_ln(a)))


def iv_const_pi(prec: int = DEFAULT_PRECISION) -> RigorInterval:
    if prec < 32:
        raise ValueError("precision must be at least 32 bits")
    down, up = _ctx(prec)
    return RigorInterval(down.const_pi(), up.const_pi(), prec)


def iv_const_e(prec: int = DEFAULT_PRECISION) -> RigorInterval:
    if prec < 32:
        raise ValueError("precision must be at least 32 bits")
    return iv_exp(iv_from_rational(1, prec))


# -- rendering ----------------------------------------------------------------


def _to_decimal(q: Fraction, digits: int, rounding) -> Decimal:
    ctx = Context(prec=digits, rounding=rounding)
    return ctx.divide(Decimal(q.numerator), Decimal(q.denominator))


def format_bound(v: mpfr, digits: int, upward: bool) -> str:
    """Decimal rendering of an endpoint, rounded outward."""
    d = _to_decimal(_exact(v), digits, ROUND_CEILING if upward else ROUND_FLOOR)
    return f"{d:e}" if d != 0 else "0"


def default_digits(prec: int) -> int:
    return math.ceil(prec * math.log10(2)) + 2


def format_interval(a: RigorInterval, digits: int | None = None) -> str:
    """``"mid ± rad"`` where the rendered ball contains the interval."""
    digits = default_digits(a.prec) if digits is None else digits
    mid = a.mid()
    m = _to_decimal(mid, digits, ROUND_FLOOR) if mid else Decimal(0)
    rad = max(_exact(a.hi) - Fraction(m), Fraction(m) - _exact(a.lo))
    r = _to_decimal(rad, 3, ROUND_CEILING) if rad else Decimal(0)
    return f"{m:e} ± {r:.2e}" if m != 0 else f"0 ± {r:.2e}"


def interval_json(a: RigorInterval, digits: int | None = None) -> dict:
    digits = default_digits(a.prec) if digits is None else digits
    return {
        "enclosure": format_interval(a, digits),
        "lo": format_bound(a.lo, digits, upward=False),
        "hi": format_bound(a.hi, digits, upward=True),
        "precision": a.prec,
    }


def to_float(a: RigorInterval) -> float:
    """Midpoint as a float; for plotting and least-squares only."""
    return float(a.mid())
