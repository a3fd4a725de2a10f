"""Rigorous log-gamma reference values, independent of every approximant.

ln Gamma(z) = (z - 1/2) ln z - z + ln(2 pi)/2 + sum_{n=1}^{N} B_{2n} / (2n (2n-1) z^(2n-1)) + R_N

For real z > 0 the remainder is bounded by the first omitted term. A
factor 2 is applied on top of that. Small arguments are shifted up with
``ln Gamma(x) = ln Gamma(x+m) - ln prod_{j<m} (x+j)``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .interval import (
    RigorInterval,
    _exact,
    iv_const_pi,
    iv_exp,
    iv_from_rational,
    iv_ln,
    iv_mul,
    iv_round,
    iv_span,
)

MAX_BERNOULLI_INDEX = 60  # B_2 .. B_120
GUARD_BITS = 16

_bernoulli_lock = threading.Lock()
_bernoulli_table: list[Fraction] = []


def _fill_bernoulli(upto: int) -> None:
    # sum_{k=0}^{n} C(n+1, k) B_k = 0
    with _bernoulli_lock:
        table = _bernoulli_table
        if not table:
            table.append(Fraction(1))
        for n in range(len(table), upto + 1):
            acc = sum(comb(n + 1, k) * table[k] for k in range(n))
            table.append(-acc / (n + 1))


def bernoulli(index: int) -> Fraction:
    """Exact Bernoulli number ``B_index`` for even ``2 <= index <= 120``."""
    if index % 2 or not 2 <= index <= 2 * MAX_BERNOULLI_INDEX:
        raise ValueError(f"Bernoulli index must be even in [2, {2 * MAX_BERNOULLI_INDEX}]")
    if len(_bernoulli_table) <= index:
        _fill_bernoulli(2 * MAX_BERNOULLI_INDEX)
    return _bernoulli_table[index]


class OracleDomainError(ValueError):
    pass


@dataclass(frozen=True)
class StirlingPlan:
    """Shift ``m`` and number of series terms ``N`` used for one evaluation."""

    shift: int
    terms: int
    cutoff: int

    def to_json(self) -> dict:
        return {"shift": self.shift, "terms": self.terms, "cutoff": self.cutoff}


def _coefficient(n: int) -> Fraction:
    return bernoulli(2 * n) / (2 * n * (2 * n - 1))


def _log2_term(n: int, z: Fraction) -> float:
    c = abs(_coefficient(n))
    return (
        math.log2(c.numerator) - math.log2(c.denominator)
        - (2 * n - 1) * (math.log2(z.numerator) - math.log2(z.denominator))
    )


def stirling_plan(x: Fraction, prec: int) -> StirlingPlan:
    """Pick the shift and truncation for argument ``x`` at ``prec`` bits.

    The shift brings the argument to ``cutoff = max(10, ceil(prec/4))``; the
    series stops at the first ``N`` whose first omitted term is below
    ``2**-(prec + GUARD_BITS)``. If no ``N <= 59`` qualifies the shift grows.
    """
    cutoff = max(10, math.ceil(prec / 4))
    shift = max(0, math.ceil(cutoff - x))
    target = -(prec + GUARD_BITS)
    while True:
        z = x + shift
        for n in range(1, MAX_BERNOULLI_INDEX):
            if _log2_term(n + 1, z) < target:
                return StirlingPlan(shift, n, cutoff)
        shift += cutoff


def _check_positive(x) -> None:
    if isinstance(x, RigorInterval):
        if not x.is_positive():
            raise OracleDomainError("log-gamma oracle needs x > 0")
    elif Fraction(x) <= 0:
        raise OracleDomainError("log-gamma oracle needs x > 0")


def oracle_lngamma(x, prec: int = 128) -> RigorInterval:
    """Enclosure of ``ln Gamma(x)`` for rational or interval ``x > 0``."""
    _check_positive(x)
    wp = prec + GUARD_BITS
    half_ln_2pi = iv_mul(
        iv_from_rational(Fraction(1, 2), wp), iv_ln(iv_const_pi(wp) * 2)
    )
    if isinstance(x, RigorInterval):
        return iv_round(_lngamma_interval(x, wp, half_ln_2pi), prec)

    x = Fraction(x)
    plan = stirling_plan(x, prec)
    z = x + plan.shift
    ln_z = iv_ln(iv_from_rational(z, wp))
    main = iv_mul(iv_from_rational(z - Fraction(1, 2), wp), ln_z) - z + half_ln_2pi
    series = sum((_coefficient(n) / z ** (2 * n - 1) for n in range(1, plan.terms + 1)), Fraction(0))
    tail = 2 * abs(_coefficient(plan.terms + 1)) / z ** (2 * plan.terms + 1)
    result = main + iv_span(series - tail, series + tail, wp)
    if plan.shift:
        prod = Fraction(1)
        for j in range(plan.shift):
            prod *= x + j
        result = result - iv_ln(iv_from_rational(prod, wp))
    return iv_round(result, prec)


def _lngamma_interval(x: RigorInterval, wp: int, half_ln_2pi: RigorInterval) -> RigorInterval:
    x_lo = _exact(x.lo)
    plan = stirling_plan(x_lo, wp - GUARD_BITS)
    z = x + plan.shift
    ln_z = iv_ln(z)
    main = iv_mul(z - Fraction(1, 2), ln_z) - z + half_ln_2pi
    inv_z = 1 / z
    inv_z2 = iv_mul(inv_z, inv_z)
    series = iv_from_rational(0, wp)
    power = inv_z
    for n in range(1, plan.terms + 1):
        series = series + power * _coefficient(n)
        power = iv_mul(power, inv_z2)
    z_lo = x_lo + plan.shift
    tail = 2 * abs(_coefficient(plan.terms + 1)) / z_lo ** (2 * plan.terms + 1)
    series = series + iv_span(-tail, tail, wp)
    result = main + series
    if plan.shift:
        prod = iv_from_rational(1, wp)
        for j in range(plan.shift):
            prod = iv_mul(prod, x + j)
        result = result - iv_ln(prod)
    return result


def oracle_gamma(x, prec: int = 128) -> RigorInterval:
    """Enclosure of ``Gamma(x)``."""
    return iv_round(iv_exp(oracle_lngamma(x, prec + GUARD_BITS)), prec)


def theta_probe(x, prec: int = 128) -> RigorInterval:
    """Enclosure of theta_x in Gamma(x+1) = sqrt(pi) (x/e)^x (8x^3+4x^2+x+theta_x/30)^(1/6)."""
    x = Fraction(x)
    if x <= 0:
        raise OracleDomainError("theta probe needs x > 0")
    wp = prec + GUARD_BITS
    lg = oracle_lngamma(x + 1, wp)
    xr = iv_from_rational(x, wp)
    log_scaled = lg + x - iv_mul(xr, iv_ln(xr))
    big = iv_exp(log_scaled * 6 - iv_ln(iv_const_pi(wp)) * 3)
    theta = (big - (8 * x**3 + 4 * x**2 + x)) * 30
    return iv_round(theta, prec)
