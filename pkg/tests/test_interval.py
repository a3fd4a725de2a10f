from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gamma_sharp.interval import (
    IntervalDomainError,
    RigorInterval,
    default_digits,
    format_interval,
    interval_json,
    iv_const_e,
    iv_const_pi,
    iv_div,
    iv_exp,
    iv_expm1,
    iv_from_rational,
    iv_ln,
    iv_pow,
    iv_powi,
    iv_root6,
    iv_sqrt,
    iv_span,
)

mpmath.mp.dps = 120
rats = st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=10**6)


def mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def encloses(iv: RigorInterval, value) -> bool:
    lo = mpmath.mpf(int(iv.lo.as_integer_ratio()[0])) / int(iv.lo.as_integer_ratio()[1])
    hi = mpmath.mpf(int(iv.hi.as_integer_ratio()[0])) / int(iv.hi.as_integer_ratio()[1])
    return lo <= value <= hi


def test_rational_enclosure_is_tight():
    iv = iv_from_rational(Fraction(1, 3), 128)
    assert iv.contains(Fraction(1, 3))
    assert iv.width <= 2.0**-128
    exact = iv_from_rational(Fraction(3, 4), 64)
    assert exact.lo == exact.hi


@given(rats, rats)
def test_arithmetic_contains_exact_result(a, b):
    ia, ib = iv_from_rational(a, 64), iv_from_rational(b, 64)
    assert (ia + ib).contains(a + b)
    assert (ia - ib).contains(a - b)
    assert (ia * ib).contains(a * b)
    assert (ia / ib).contains(a / b)


@given(rats)
def test_transcendentals_contain_high_precision_values(q):
    iv = iv_from_rational(q, 96)
    assert encloses(iv_ln(iv), mpmath.log(mp(q)))
    assert encloses(iv_sqrt(iv), mpmath.sqrt(mp(q)))
    assert encloses(iv_root6(iv), mpmath.root(mp(q), 6))
    small = iv_from_rational(q / 1000, 96)
    assert encloses(iv_exp(small), mpmath.exp(mp(q / 1000)))
    assert encloses(iv_expm1(small), mpmath.expm1(mp(q / 1000)))


def test_refinement_is_monotone():
    q = Fraction(7, 3)
    prev = None
    for p in (64, 128, 256, 512):
        iv = iv_ln(iv_from_rational(q, p))
        if prev is not None:
            assert iv.width <= prev.width
            assert prev.intersects(iv)
        prev = iv


def test_constants():
    pi = iv_const_pi(128)
    assert encloses(pi, mpmath.pi)
    assert pi.width <= 2.0**-125
    assert encloses(iv_const_e(128), mpmath.e)
    with pytest.raises(ValueError):
        iv_const_pi(16)


def test_domain_errors():
    with pytest.raises(IntervalDomainError):
        iv_ln(iv_span(-1, 1))
    with pytest.raises(ZeroDivisionError):
        iv_div(iv_from_rational(1), iv_span(-1, 1))
    with pytest.raises(IntervalDomainError):
        iv_sqrt(iv_span(-1, 1))


def test_powers():
    assert iv_powi(iv_from_rational(3), 4).contains(81)
    assert iv_powi(iv_span(-2, 1), 2).contains(0)
    assert iv_powi(iv_span(-2, 1), 2).lo >= 0
    assert encloses(iv_pow(iv_from_rational(2, 128), Fraction(1, 3)), mpmath.cbrt(2))


def test_expm1_keeps_relative_accuracy():
    tiny = iv_from_rational(Fraction(1, 10**40), 128)
    r = iv_expm1(tiny)
    assert r.relative_width() < 1e-35


def test_formatting_contains_interval():
    iv = iv_ln(iv_from_rational(10, 128))
    text = format_interval(iv, 20)
    mid, rad = text.split(" ± ")
    m, r = Fraction(mpmath.nstr(mpmath.mpf(mid), 30)), Fraction(rad)
    assert m - r <= iv.mid() <= m + r
    doc = interval_json(iv)
    assert doc["precision"] == 128
    assert Fraction(doc["lo"]) <= Fraction(doc["hi"])
    assert default_digits(128) == 41
