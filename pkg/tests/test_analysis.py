from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest
import sympy

from gamma_sharp import published
from gamma_sharp.analysis import (
    GT,
    LT,
    UNDECIDED,
    DomainViolation,
    Sample,
    WidthExceeded,
    aggregate,
    expected_mu,
    expected_order,
    log_grid,
    mortici_estimate,
    order_fit,
    probe_threshold,
    tail_sum_bounds,
    theorem_approximant,
    verify_inequality,
)
from gamma_sharp.approximants import Kind, all_approximants, approximant, residual
from gamma_sharp.certificates import (
    Verdict,
    base_second_difference,
    positivity_certificate,
    second_difference_rational,
    telescoping_conclusion,
)
from gamma_sharp.exact import Polynomial, RationalFunction

F = Fraction
mpmath.mp.dps = 50


def as_mpf(v):
    n, d = v.as_integer_ratio()
    return mpmath.mpf(int(n)) / int(d)


# -- tail sums ------------------------------------------------------------------


def test_tail_bounds_example():
    iv = tail_sum_bounds(10, 2)
    assert iv.contains(F(1, 10)) and iv.contains(F(1, 9))
    assert float(iv.lo) == pytest.approx(0.1) and float(iv.hi) == pytest.approx(1 / 9)


def test_tail_bounds_direct_sum():
    # 10**5 terms plus the integral remainder 1/(x + 10**5 - 1/2) approximates the tail
    n = 10**5
    total = mpmath.fsum(1 / mpmath.mpf(10 + j) ** 2 for j in range(n)) + 1 / (mpmath.mpf(10 + n) - 0.5)
    iv = tail_sum_bounds(10, 2)
    assert as_mpf(iv.lo) <= total <= as_mpf(iv.hi)


def test_tail_bounds_scaling():
    a, b = tail_sum_bounds(100, 5), tail_sum_bounds(200, 5)
    assert float(a.lo) * 100**4 == pytest.approx(0.25)
    assert float(a.lo) / float(b.lo) == pytest.approx(16)


def test_tail_bounds_hurwitz_zeta_random():
    rng = random.Random(11)
    for _ in range(50):
        x = F(rng.randint(201, 5000), 100)
        lam = F(rng.randint(101, 1000), 100)
        iv = tail_sum_bounds(x, lam, 128)
        z = mpmath.zeta(as_mpf_frac(lam), as_mpf_frac(x))
        assert as_mpf(iv.lo) <= z <= as_mpf(iv.hi)


def as_mpf_frac(q):
    return mpmath.mpf(q.numerator) / q.denominator


def test_tail_bounds_domain():
    with pytest.raises(DomainViolation):
        tail_sum_bounds(2, 3)
    with pytest.raises(DomainViolation):
        tail_sum_bounds(10, 1)


# -- rates ------------------------------------------------------------------------

GRID = [125, 250, 500, 1000]


def test_mortici_ramanujan_base():
    rep = mortici_estimate(approximant(Kind.RAMANUJAN_BASE), 5, GRID)
    assert abs(rep.l_exact) == F(11, 2880)
    assert abs(float(rep.l_estimate.mid()) / float(rep.l_exact) - 1) < 1e-3
    assert abs(rep.limit_exact) == F(11, 11520)
    assert rep.limit_relative_error() < 0.01
    assert rep.converged


def test_mortici_gosper_cf0():
    rep = mortici_estimate(approximant(Kind.GOSPER_CF, 0), 5, GRID)
    assert abs(rep.l_exact) == F(5929, 1166400)
    assert abs(rep.limit_exact) == F(5929, 4665600)
    assert rep.limit_relative_error() < 0.01


def test_mortici_wrong_lambda_flags_divergence():
    rep = mortici_estimate(approximant(Kind.GOSPER_CF, 0), 6, GRID)
    assert not rep.converged
    assert rep.limit_exact is None


def test_mortici_width_exceeded():
    with pytest.raises(WidthExceeded) as info:
        mortici_estimate(approximant(Kind.RAMANUJAN_CF, 3), 13, [1000, 2000], 64)
    assert info.value.suggested_precision == 128


def test_mortici_grid_validation():
    with pytest.raises(DomainViolation):
        mortici_estimate(approximant(Kind.STIRLING), 2, [5, 10])
    with pytest.raises(DomainViolation):
        mortici_estimate(approximant(Kind.STIRLING), 2, [100, 50])


@pytest.mark.parametrize(
    "kind, k, mu, tol, prec",
    [
        (Kind.GOSPER_CF, 1, 6, 0.05, 256),
        (Kind.RAMANUJAN_MIXED1, 1, 10, 0.1, 384),
        (Kind.STIRLING, None, 1, 0.05, 128),
    ],
)
def test_order_fit_examples(kind, k, mu, tol, prec):
    fit = order_fit(approximant(kind, k), log_grid(100, 10000, 12), prec)
    assert abs(fit - mu) <= tol


def test_order_fit_needs_two_decades():
    with pytest.raises(DomainViolation):
        order_fit(approximant(Kind.STIRLING), [100, 200, 5000])


@pytest.mark.parametrize("adef", all_approximants(), ids=lambda d: d.name)
def test_order_consistency(adef):
    fit = order_fit(adef, log_grid(100, 10000, 10), 384)
    assert abs(fit - expected_mu(adef)) <= 0.1


@pytest.mark.parametrize(
    "adef", [d for d in all_approximants() if d.spec is not None], ids=lambda d: d.name
)
def test_lemma_self_consistency_at_ten_thousand(adef):
    # signed: the symbolic coefficient and the oracle residual come from independent code
    order, coeff = expected_order(adef)
    x = 10**4
    e = residual(adef, x, 512).E
    scaled = float(e.mid() * x ** (order - 1))
    assert scaled == pytest.approx(float(coeff / (order - 1)), rel=0.01)


# -- inequalities -------------------------------------------------------------------


def test_theorem4_uniform_direction():
    rep = verify_inequality(4, 1, [1, 2, 5, 10, 100])
    assert rep.all_decided and rep.observed_direction in (LT, GT)
    assert all(not s.margin.contains_zero() for s in rep.samples)


def test_domain_gate():
    with pytest.raises(DomainViolation):
        verify_inequality(2, 0, [F(25, 2), 20])


def test_theorem1_k0_recorded_as_data():
    rep = verify_inequality(1, 0, [1, 2])
    assert rep.printed_direction == GT
    assert rep.observed_direction == LT
    assert rep.agrees is False


def test_mixed_samples_force_undecided():
    s = [Sample(F(1), LT, None, 128), Sample(F(2), GT, None, 128)]
    assert aggregate(s) == (UNDECIDED, True)
    assert aggregate(s[:1]) == (LT, False)


def test_escalation_records_precision():
    rep = verify_inequality(3, 3, [10**4], 128)
    assert rep.samples[0].precision == 256
    assert rep.samples[0].direction != UNDECIDED


def test_threshold_probe():
    p0 = probe_threshold(2, 0, 20)
    assert p0.crossing is not None and 7 < p0.crossing[0] < p0.crossing[1] < 8
    p2 = probe_threshold(2, 2, 12)
    assert 4 < p2.crossing[0] < p2.crossing[1] < 5


def test_theorem_lookup():
    with pytest.raises(ValueError):
        theorem_approximant(4, 0)
    with pytest.raises(ValueError):
        theorem_approximant(5, 0)


# -- certificates ----------------------------------------------------------------------


def test_base_second_difference_against_sympy():
    x = sympy.Symbol("x")
    expr = sympy.diff(x * sympy.log(1 + 1 / x), x, 2)
    rf = base_second_difference()
    for t in (1, 3, 10):
        assert sympy.Rational(str(rf(F(t)))) == sympy.nsimplify(sympy.simplify(expr.subs(x, t)))


def test_second_difference_against_sympy_gosper_cf0():
    x = sympy.Symbol("x")
    g = lambda t: t + sympy.Rational(1, 6) + sympy.Rational(1, 72) / (t + sympy.Rational(31, 90))  # noqa: E731
    d = -1 + x * sympy.log(1 + 1 / x) + sympy.log(g(x + 1) / g(x)) / 2
    d2 = sympy.diff(d, x, 2)
    rf = second_difference_rational(theorem_approximant(1, 0).spec)
    for t in (F(1), F(7, 3), F(20)):
        ref = sympy.nsimplify(sympy.simplify(d2.subs(x, sympy.Rational(t.numerator, t.denominator))))
        assert sympy.Rational(str(rf(t))) == ref


def test_gosper_cf0_denominator_factors():
    rf = second_difference_rational(theorem_approximant(1, 0).spec)
    x = Polynomial.x()
    factor = x * Polynomial([1, 1]) ** 2 * Polynomial([31, 90]) ** 2 * Polynomial([121, 90]) ** 2
    assert factor.monic().divides(rf.den)
    assert rf.num.degree == 8


def test_ramanujan_cf0_denominator_factors():
    rf = second_difference_rational(theorem_approximant(3, 0).spec)
    factor = Polynomial([79, 154]) ** 2 * Polynomial([233, 154]) ** 2
    assert factor.monic().divides(rf.den)


def test_certificate_examples():
    x = Polynomial.x()
    c = positivity_certificate(RationalFunction(Polynomial([1]), x * Polynomial([1, 1]) ** 2), 1)
    assert c.denominator_positive and c.verdict is Verdict.ALL_NONNEG
    c = positivity_certificate(RationalFunction(x - 2, x), 1)
    assert c.verdict is Verdict.INCONCLUSIVE
    c = positivity_certificate(RationalFunction(Polynomial([1]), x - 2), 1)
    assert c.verdict is Verdict.INCONCLUSIVE and not c.denominator_positive


def test_telescoping_chains():
    x = Polynomial.x()
    pos = positivity_certificate(RationalFunction(Polynomial([1]), x), 1)
    neg = positivity_certificate(RationalFunction(Polynomial([-1]), x), 1)
    bad = positivity_certificate(RationalFunction(x - 2, x), 1)
    assert telescoping_conclusion(pos).e_sign == 1
    assert telescoping_conclusion(neg).e_sign == -1
    assert telescoping_conclusion(bad).direction == UNDECIDED


@pytest.mark.parametrize("theorem, k", [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1)])
def test_certificates_sound_and_match_measurement(theorem, k):
    adef = theorem_approximant(theorem, k)
    start = published.domain_start(theorem, k)
    rf = second_difference_rational(adef.spec)
    cert = positivity_certificate(rf, start)
    assert cert.verdict is not Verdict.INCONCLUSIVE
    rng = random.Random(theorem * 10 + k)
    for _ in range(100):
        t = start + F(rng.randint(0, 10**6), 10**4)
        assert rf(t) * cert.sign >= 0
    measured = verify_inequality(theorem, k, log_grid(start, 1000, 8)).observed_direction
    assert telescoping_conclusion(cert).direction == measured
