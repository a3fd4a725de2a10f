"""Exact arithmetic over Q in a single variable x.

Three value types live here:

* :class:`Polynomial` - dense, coefficients low degree first.
* :class:`RationalFunction` - ``num/den`` kept in lowest terms with a
  monic denominator.
* :class:`AsymptoticSeries` - a truncated expansion in powers of ``1/x``.
  Coefficients past ``trunc_order`` are *unknown*, not zero, and every
  operation propagates that truncation honestly.

Everything is immutable; :class:`fractions.Fraction` is the coefficient
field throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(q: Fraction) -> str:
    """Render as ``"p/q"`` (or ``"p"`` for integers) for JSON output."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


def _strip(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = [as_fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial over Q; ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: tuple[Fraction, ...] = ()

    def __init__(self, coeffs: Iterable[Rational] = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    @classmethod
    def constant(cls, c: Rational) -> Polynomial:
        return cls((c,))

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def monomial(cls, power: int, c: Rational = 1) -> Polynomial:
        return cls([0] * power + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if self.coeffs else Fraction(0)

    def __add__(self, other) -> Polynomial:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other) -> Polynomial:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Rational) -> Polynomial:
        return Polynomial(c * a for a in self.coeffs)

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - dq - 1, -1, -1):
            c = rem[i + dq] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def exact_div(self, other: Polynomial) -> Polynomial:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: Polynomial) -> bool:
        """True when ``self`` divides ``other`` exactly."""
        return (other % self).is_zero()

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def taylor_shift(self, a: Rational) -> Polynomial:
        return poly_taylor_shift(self, a)

    def sign_at_infinity(self) -> int:
        if self.is_zero():
            return 0
        return 1 if self.leading > 0 else -1

    def integer_primitive(self) -> Polynomial:
        """Scale to coprime integer coefficients with positive leading term."""
        if self.is_zero():
            return self
        from math import gcd, lcm

        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return Polynomial(Fraction(c // g) for c in ints)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{format_rational(c)}*x^{i}" if i else format_rational(c))
        return "Polynomial(" + " + ".join(terms) + ")"


def _as_poly(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial.constant(as_fraction(value))


def poly_taylor_shift(p: Polynomial, a: Rational) -> Polynomial:
    """Return ``q`` with ``q(t) == p(t + a)`` exactly."""
    a = as_fraction(a)
    if a == 0 or p.degree < 1:
        return p
    n = len(p.coeffs)
    out = [Fraction(0)] * n
    # binomial expansion of each (t + a)^i
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        apow = Fraction(1)
        for j in range(i, -1, -1):
            out[j] += c * comb(i, j) * apow
            apow *= a
    return Polynomial(out)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q (Euclid on integer-primitive remainders)."""
    a, b = a.integer_primitive(), b.integer_primitive()
    while not b.is_zero():
        a, b = b, (a % b).integer_primitive()
    return a.monic()


def sturm_count(p: Polynomial, a: Rational) -> int:
    """Number of distinct real roots of ``p`` in ``(a, +inf)``."""
    if p.degree < 1:
        return 0
    a = as_fraction(a)
    # square-free part with any root at a divided out; Sturm needs both
    p = p.exact_div(poly_gcd(p, p.derivative()))
    while p.degree >= 1 and p(a) == 0:
        p = p.exact_div(Polynomial((-a, 1)))
    if p.degree < 1:
        return 0
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()

    def changes(signs: Sequence[int]) -> int:
        nz = [s for s in signs if s]
        return sum(1 for s, t in zip(nz, nz[1:]) if s != t)

    at_a = [(q(a) > 0) - (q(a) < 0) for q in seq]
    at_inf = [q.sign_at_infinity() for q in seq]
    return changes(at_a) - changes(at_inf)


def has_root_on(p: Polynomial, a: Rational) -> bool:
    """True when ``p`` vanishes somewhere on ``[a, +inf)``."""
    a = as_fraction(a)
    return p(a) == 0 or sturm_count(p, a) > 0


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """``num/den`` in lowest terms, ``den`` monic."""

    num: Polynomial
    den: Polynomial

    def __init__(self, num, den=None, *, normalize: bool = True):
        num = _as_poly(num)
        den = Polynomial.constant(1) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if normalize:
            if num.is_zero():
                den = Polynomial.constant(1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
            lead = den.leading
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_any(cls, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        return cls(_as_poly(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of rational function at x={x}")
        return self.num(x) / d

    def __add__(self, other) -> RationalFunction:
        other = RationalFunction.from_any(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.degree > 0:
            sd, od = self.den.exact_div(g), other.den.exact_div(g)
            return RationalFunction(self.num * od + other.num * sd, sd * other.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den, normalize=False)

    def __sub__(self, other) -> RationalFunction:
        return self + (-RationalFunction.from_any(other))

    def __rsub__(self, other) -> RationalFunction:
        return RationalFunction.from_any(other) - self

    def __mul__(self, other) -> RationalFunction:
        other = RationalFunction.from_any(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def reciprocal(self) -> RationalFunction:
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other) -> RationalFunction:
        return self * RationalFunction.from_any(other).reciprocal()

    def __rtruediv__(self, other) -> RationalFunction:
        return RationalFunction.from_any(other) * self.reciprocal()

    def shift(self, a: Rational) -> RationalFunction:
        """``R(x + a)``; shifting preserves lowest terms and monicity."""
        return RationalFunction(
            poly_taylor_shift(self.num, a), poly_taylor_shift(self.den, a), normalize=False
        )

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r} / {self.den!r})"


def rf_derivative(r: RationalFunction, order: int = 1) -> RationalFunction:
    """Exact derivative of order 1 or 2 by the quotient rule."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    for _ in range(order):
        r = RationalFunction(
            r.num.derivative() * r.den - r.num * r.den.derivative(), r.den * r.den
        )
    return r


def log_derivative(r: RationalFunction) -> RationalFunction:
    """``r'/r``."""
    return rf_derivative(r) / r


# ---------------------------------------------------------------------------
# Asymptotic series in u = 1/x
# ---------------------------------------------------------------------------


class SeriesError(ArithmeticError):
    pass


@dataclass(frozen=True)
class AsymptoticSeries:
    """Truncated expansion ``sum_{m=min_order}^{trunc_order} c_m x**(-m)``.

    ``coeffs[i]`` is the coefficient of ``x**-(min_order + i)``. Terms of
    order beyond ``trunc_order`` are unknown. ``min_order`` may be negative
    (positive powers of ``x``).
    """

    min_order: int
    coeffs: tuple[Fraction, ...]
    trunc_order: int

    def __init__(self, min_order: int, coeffs: Iterable[Rational], trunc_order: int):
        cs = [as_fraction(c) for c in coeffs][: max(trunc_order - min_order + 1, 0)]
        # drop leading zeros so min_order is the true leading order
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        cs = cs[lead:]
        min_order += lead
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            min_order = trunc_order + 1
        object.__setattr__(self, "min_order", min_order)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "trunc_order", trunc_order)

    @classmethod
    def zero(cls, trunc_order: int) -> AsymptoticSeries:
        return cls(trunc_order + 1, (), trunc_order)

    @classmethod
    def constant(cls, c: Rational, trunc_order: int) -> AsymptoticSeries:
        return cls(0, (c,), trunc_order)

    @classmethod
    def from_u_polynomial(cls, p: Polynomial, trunc_order: int) -> AsymptoticSeries:
        """Series whose coefficient of ``x**-i`` is ``p[i]`` (exact polynomial in 1/x)."""
        return cls(0, p.coeffs, trunc_order)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, m: int) -> Fraction:
        if m > self.trunc_order:
            raise SeriesError(f"coefficient of x^-{m} lies beyond truncation order {self.trunc_order}")
        i = m - self.min_order
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def dense(self, start: int) -> list[Fraction]:
        """Coefficients for orders ``start..trunc_order``."""
        return [self.coeff(m) for m in range(start, self.trunc_order + 1)]

    def leading_term(self) -> tuple[int, Fraction] | None:
        """First nonzero ``(order, coefficient)``, or None if all known terms vanish."""
        if not self.coeffs:
            return None
        return self.min_order, self.coeffs[0]

    def partial_sum(self, x):
        acc = 0
        for i, c in enumerate(self.coeffs):
            acc += c * as_fraction(x) ** (-(self.min_order + i))
        return acc

    def __add__(self, other: AsymptoticSeries) -> AsymptoticSeries:
        return series_add(self, other)

    def __sub__(self, other: AsymptoticSeries) -> AsymptoticSeries:
        return series_add(self, other.scale(-1))

    def __neg__(self) -> AsymptoticSeries:
        return self.scale(-1)

    def __mul__(self, other) -> AsymptoticSeries:
        if isinstance(other, AsymptoticSeries):
            return series_mul(self, other)
        return self.scale(other)

    def scale(self, c: Rational) -> AsymptoticSeries:
        return AsymptoticSeries(self.min_order, (c * a for a in self.coeffs), self.trunc_order)

    def truncate(self, n: int) -> AsymptoticSeries:
        return AsymptoticSeries(self.min_order, self.coeffs, min(n, self.trunc_order))

    def __repr__(self) -> str:
        terms = [
            f"{format_rational(c)}*x^{-(self.min_order + i)}"
            for i, c in enumerate(self.coeffs)
            if c
        ]
        body = " + ".join(terms) if terms else "0"
        return f"AsymptoticSeries({body} + O(x^{-(self.trunc_order + 1)}))"


def series_add(a: AsymptoticSeries, b: AsymptoticSeries) -> AsymptoticSeries:
    n = min(a.trunc_order, b.trunc_order)
    lo = min(a.min_order, b.min_order)
    return AsymptoticSeries(lo, (a.coeff(m) + b.coeff(m) for m in range(lo, n + 1)), n)


def series_mul(a: AsymptoticSeries, b: AsymptoticSeries) -> AsymptoticSeries:
    if a.is_zero() or b.is_zero():
        # unknown tail of the other factor still limits what is known
        n = min(a.trunc_order + b.min_order, b.trunc_order + a.min_order)
        return AsymptoticSeries.zero(n)
    n = min(a.trunc_order + b.min_order, b.trunc_order + a.min_order)
    lo = a.min_order + b.min_order
    out = [Fraction(0)] * (n - lo + 1)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            k = i + j
            if k >= len(out):
                break
            out[k] += x * y
    return AsymptoticSeries(lo, out, n)


def series_reciprocal(s: AsymptoticSeries) -> AsymptoticSeries:
    """``1/s`` around its leading term; relative precision is preserved."""
    lead = s.leading_term()
    if lead is None:
        raise SeriesError("reciprocal of a series with no nonzero known coefficient")
    m, c = lead
    rel = s.trunc_order - m  # number of known relative orders
    a = [s.coeff(m + i) / c for i in range(rel + 1)]  # a[0] == 1
    b = [Fraction(1)]
    for k in range(1, rel + 1):
        b.append(-sum(a[i] * b[k - i] for i in range(1, k + 1)))
    return AsymptoticSeries(-m, (bk / c for bk in b), -m + rel)


def series_log1p(s: AsymptoticSeries, n: int | None = None) -> AsymptoticSeries:
    """``log(1 + s)`` for a series with no constant term (``min_order >= 1``).

    Uses ``L' = A'/A`` with ``A = 1 + s``, which gives
    ``k l_k = k a_k - sum_{j<k} j l_j a_{k-j}``.
    """
    if s.min_order < 1:
        raise SeriesError("log1p needs a series vanishing at infinity")
    top = s.trunc_order if n is None else min(n, s.trunc_order)
    a = [Fraction(0)] + [s.coeff(k) for k in range(1, top + 1)]
    l = [Fraction(0)] * (top + 1)
    for k in range(1, top + 1):
        acc = k * a[k]
        for j in range(1, k):
            if l[j] and a[k - j]:
                acc -= j * l[j] * a[k - j]
        l[k] = acc / k
    return AsymptoticSeries(1, l[1:], top)


def series_base_difference(n: int) -> AsymptoticSeries:
    """Series of ``-1 + x*log(1 + 1/x)``: coefficient of ``x**-m`` is ``(-1)**m/(m+1)``."""
    if n < 1:
        raise ValueError("truncation order must be >= 1")
    return AsymptoticSeries(1, (Fraction((-1) ** m, m + 1) for m in range(1, n + 1)), n)


def _normalized_u_poly(p: Polynomial) -> Polynomial:
    """``p(x) / (lead * x**deg)`` written as a polynomial in ``u = 1/x``."""
    lead = p.leading
    return Polynomial(c / lead for c in reversed(p.coeffs))


def _log_shift_poly(p: Polynomial, n: int) -> AsymptoticSeries:
    """Series of ``log(p(x+1)/p(x))`` for a nonzero polynomial."""
    if p.degree < 1:
        return AsymptoticSeries.zero(n)
    shifted = _normalized_u_poly(poly_taylor_shift(p, 1)) - 1
    plain = _normalized_u_poly(p) - 1
    hi = series_log1p(AsymptoticSeries(0, shifted.coeffs, n))
    lo = series_log1p(AsymptoticSeries(0, plain.coeffs, n))
    return hi - lo


def series_log_ratio_shift(r, n: int) -> AsymptoticSeries:
    """Series of ``log(R(x+1)/R(x))`` in powers of ``1/x``, exact to order ``n``."""
    r = RationalFunction.from_any(r)
    if r.is_zero():
        raise SeriesError("log-ratio of the zero function has no expansion")
    return _log_shift_poly(r.num, n) - _log_shift_poly(r.den, n)
