from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma_sharp.exact import (
    AsymptoticSeries,
    Polynomial,
    RationalFunction,
    SeriesError,
    format_rational,
    has_root_on,
    poly_gcd,
    poly_taylor_shift,
    rf_derivative,
    series_base_difference,
    series_log1p,
    series_log_ratio_shift,
    series_mul,
    series_reciprocal,
    sturm_count,
)

X = sympy.Symbol("x")
small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(small, min_size=0, max_size=6).map(Polynomial)


def to_sympy(p: Polynomial):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(p.coeffs))


def sympy_series(expr, n):
    """Coefficients of x**-m, m = 0..n, via the substitution x = 1/u."""
    u = sympy.Symbol("u", positive=True)
    ser = sympy.series(expr.subs(X, 1 / u), u, 0, n + 1).removeO()
    return [Fraction(str(ser.coeff(u, m))) for m in range(n + 1)]


# -- rationals and polynomials ---------------------------------------------------


def test_format_rational():
    assert format_rational(Fraction(-11, 240)) == "-11/240"
    assert format_rational(Fraction(3)) == "3"


def test_polynomial_normal_form():
    p = Polynomial([1, 2, 0, 0])
    assert p.degree == 1
    assert Polynomial([]).degree == -1
    assert Polynomial([0, 0]).is_zero()


@pytest.mark.parametrize(
    "coeffs, a, expected",
    [
        ([0, 0, 1], 1, [1, 2, 1]),
        ([0, 1], 0, [0, 1]),
        ([31, 90], Fraction(-31, 90), [0, 90]),
    ],
)
def test_taylor_shift_examples(coeffs, a, expected):
    assert poly_taylor_shift(Polynomial(coeffs), a) == Polynomial(expected)


@given(polys, small)
def test_taylor_shift_round_trip(p, a):
    assert poly_taylor_shift(poly_taylor_shift(p, a), -a) == p


@given(polys, small, small)
def test_taylor_shift_evaluates_shifted(p, a, t):
    assert poly_taylor_shift(p, a)(t) == p(t + a)


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_gcd_matches_sympy(a, b):
    if a.is_zero() and b.is_zero():
        return
    g = poly_gcd(a, b)
    expected = sympy.gcd(to_sympy(a), to_sympy(b))
    if g.degree <= 0:
        assert sympy.Poly(expected, X).degree() <= 0
    else:
        assert sympy.simplify(to_sympy(g) - sympy.Poly(expected, X).monic().as_expr()) == 0


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4), st.integers(-5, 5))
def test_sturm_count_matches_real_roots(roots, a):
    p = Polynomial([1])
    for r in roots:
        p = p * Polynomial([-r, 1])
    expected = len({r for r in roots if r > a})
    assert sturm_count(p, a) == expected
    assert has_root_on(p, a) == any(r >= a for r in roots)


def test_divmod_and_exact_division():
    p = Polynomial([31, 90]) * Polynomial([121, 90]) ** 2
    assert Polynomial([121, 90]).divides(p)
    q, r = p.divmod(Polynomial([31, 90]))
    assert r.is_zero() and q == Polynomial([121, 90]) ** 2


# -- rational functions ---------------------------------------------------------


def test_rational_function_normalization():
    x = Polynomial.x()
    r = RationalFunction(x * (x + 1), (x + 1) * Polynomial([4, 2]))
    assert r.den == Polynomial([2, 1])
    assert r(Fraction(3)) == Fraction(3, 10)


def test_rf_derivative_examples():
    x = Polynomial.x()
    assert rf_derivative(RationalFunction(Polynomial([1]), x)) == RationalFunction(Polynomial([-1]), x * x)
    r = RationalFunction(x, x + 1)
    assert rf_derivative(r) == RationalFunction(Polynomial([1]), (x + 1) ** 2)
    assert rf_derivative(RationalFunction(Polynomial([5]))).is_zero()


@given(polys, st.lists(small, min_size=1, max_size=3).map(lambda cs: Polynomial(list(cs) + [1])))
@settings(max_examples=40, deadline=None)
def test_rf_second_derivative_matches_sympy(num, den):
    r = RationalFunction(num, den)
    got = rf_derivative(r, 2)
    expected = sympy.diff(to_sympy(num) / to_sympy(den), X, 2)
    assert sympy.simplify(to_sympy(got.num) / to_sympy(got.den) - expected) == 0


def test_pole_raises():
    r = RationalFunction(Polynomial([1]), Polynomial([-2, 1]))
    with pytest.raises(ZeroDivisionError):
        r(Fraction(2))


# -- series ---------------------------------------------------------------------


def test_base_difference_examples():
    s = series_base_difference(3)
    assert s.dense(1) == [Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4)]
    assert series_base_difference(1).dense(1) == [Fraction(-1, 2)]
    assert s.coeff(0) == 0


def test_base_difference_against_sympy():
    expr = -1 + X * sympy.log(1 + 1 / X)
    ref = sympy_series(expr, 8)
    s = series_base_difference(8)
    assert [s.coeff(m) for m in range(9)] == ref


def test_log_ratio_examples():
    x = Polynomial.x()
    s = series_log_ratio_shift(x, 4)
    assert s.dense(1) == [1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4)]
    assert series_log_ratio_shift(x + Fraction(1, 6), 4).coeff(1) == 1
    assert series_log_ratio_shift(Polynomial([7]), 4).is_zero()
    with pytest.raises(SeriesError):
        series_log_ratio_shift(Polynomial([]), 4)


@pytest.mark.parametrize(
    "num, den",
    [
        ([Fraction(1, 30), 1, 4, 8], [1]),
        ([1, 2], [Fraction(31, 90), 1]),
        ([Fraction(1, 72), Fraction(121, 90), 1], [Fraction(31, 90), 1]),
    ],
)
def test_log_ratio_against_sympy(num, den):
    r = RationalFunction(Polynomial(num), Polynomial(den))
    f = to_sympy(r.num) / to_sympy(r.den)
    expr = sympy.log(f.subs(X, X + 1) / f)
    ref = sympy_series(expr, 7)
    s = series_log_ratio_shift(r, 7)
    assert [s.coeff(m) for m in range(8)] == ref


def test_series_algebra_examples():
    inv_x = AsymptoticSeries(1, [1], 3)
    log = series_log1p(inv_x)
    assert log.dense(1) == [1, Fraction(-1, 2), Fraction(1, 3)]
    assert series_mul(AsymptoticSeries(1, [1], 10), AsymptoticSeries(2, [1], 10)).leading_term() == (3, 1)
    s = AsymptoticSeries(1, [1, 2, 3], 3)
    assert (s + s.scale(-1)).is_zero()


def test_product_truncation_is_justified():
    a = AsymptoticSeries(1, [1, 1], 4)
    b = AsymptoticSeries(2, [1], 6)
    assert series_mul(a, b).trunc_order == min(4 + 2, 6 + 1)


def test_reciprocal():
    s = AsymptoticSeries(0, [1, 1], 5)  # 1 + 1/x
    r = series_reciprocal(s)
    assert r.dense(0) == [1, -1, 1, -1, 1, -1]
    with pytest.raises(SeriesError):
        series_reciprocal(AsymptoticSeries.zero(4))


def test_log1p_requires_vanishing_series():
    with pytest.raises(SeriesError):
        series_log1p(AsymptoticSeries(0, [1, 1], 4))


def test_coefficients_beyond_truncation_refused():
    with pytest.raises(SeriesError):
        series_base_difference(3).coeff(4)


def test_partial_sum_tracks_function():
    import mpmath

    mpmath.mp.dps = 60
    n = 6
    s = series_log_ratio_shift(Polynomial([Fraction(1, 30), 1, 4, 8]), n)
    ratios = []
    for x in (10, 100, 1000):
        f = lambda t: 8 * t**3 + 4 * t**2 + t + mpmath.mpf(1) / 30  # noqa: E731
        exact = mpmath.log(f(mpmath.mpf(x + 1)) / f(mpmath.mpf(x)))
        ps = s.partial_sum(Fraction(x))
        err = abs(exact - mpmath.mpf(ps.numerator) / ps.denominator)
        ratios.append(err * mpmath.mpf(x) ** (n + 1))
    assert max(ratios) < 10
