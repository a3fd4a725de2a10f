"""Rate estimation, tail bounds and sampled inequality checks.

Sign convention: ``E(x) = log Gamma(x+1) - log A(x)``. A sample has direction
``GT`` when ``Gamma(x+1) > A(x)`` (E > 0) and ``LT`` when ``Gamma(x+1) < A(x)``.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction

from . import published
from .approximants import (
    ApproximantDef,
    Kind,
    SingularPoint,
    approximant,
    residual,
)
from .correction import first_surviving, lemma_limit
from .exact import format_rational
from .interval import (
    RigorInterval,
    interval_json,
    iv_from_rational,
    iv_pow,
)

LT, GT, UNDECIDED = "LT", "GT", "UNDECIDED"


class WidthExceeded(ArithmeticError):
    """An enclosure is too wide to support the requested estimate."""

    def __init__(self, message: str, suggested_precision: int):
        super().__init__(f"{message}; retry with precision >= {suggested_precision}")
        self.suggested_precision = suggested_precision


class DomainViolation(ValueError):
    pass


# -- tail sums ------------------------------------------------------------------


def tail_sum_bounds(x, lam, prec: int = 128) -> RigorInterval:
    """Enclosure of ``sum_{j>=0} (x+j)**-lam`` from the integral comparison."""
    x, lam = Fraction(x), Fraction(lam)
    if x <= 2 or lam <= 1:
        raise DomainViolation("tail bounds need x > 2 and lambda > 1")
    e = lam - 1
    if e.denominator == 1:
        lo = iv_from_rational(1 / (e * x**e.numerator), prec)
        hi = iv_from_rational(1 / (e * (x - 1) ** e.numerator), prec)
    else:
        lo = 1 / (iv_pow(iv_from_rational(x, prec), e) * e)
        hi = 1 / (iv_pow(iv_from_rational(x - 1, prec), e) * e)
    return RigorInterval(lo.lo, hi.hi, prec)


# -- Mortici-lemma rate estimation ---------------------------------------------

RICHARDSON_TOLERANCE = 1e-2


def _richardson(x1: Fraction, g1: RigorInterval, x2: Fraction, g2: RigorInterval) -> RigorInterval:
    # g(x) = l + c/x + ...; eliminate c using two abscissae
    r = x2 / x1
    return (g2 * r - g1) / (r - 1)


def _require_tight(v: RigorInterval, what: str, prec: int, tol: float = 1e-6) -> None:
    if v.contains_zero() or v.relative_width() > tol:
        raise WidthExceeded(f"{what} is not resolved at {prec} bits", 2 * prec)


def expected_order(adef: ApproximantDef) -> tuple[int, Fraction] | None:
    """Leading ``(order, coefficient)`` of the exact difference series."""
    if adef.spec is None:
        return None
    n = 2 * (adef.k or 0) + 16
    return first_surviving(adef.spec, n)


@dataclass
class RateReport:
    name: str
    k: int | None
    lam: int
    l_estimate: RigorInterval
    l_exact: Fraction | None
    exact_order: int | None
    mu_estimate: float
    limit_check: RigorInterval
    limit_exact: Fraction | None
    converged: bool
    richardson: list[tuple[Fraction, RigorInterval]] = field(default_factory=list)

    def limit_relative_error(self) -> float | None:
        if self.limit_exact is None or self.limit_exact == 0:
            return None
        return abs(float(self.limit_check.mid() / self.limit_exact) - 1)

    def to_json(self) -> dict:
        opt = lambda q: None if q is None else format_rational(q)  # noqa: E731
        return {
            "approximant": self.name,
            "k": self.k,
            "lambda": self.lam,
            "lEstimate": interval_json(self.l_estimate),
            "lExact": opt(self.l_exact),
            "exactOrder": self.exact_order,
            "muEstimate": self.mu_estimate,
            "limitCheck": interval_json(self.limit_check),
            "limitExact": opt(self.limit_exact),
            "limitRelativeError": self.limit_relative_error(),
            "converged": self.converged,
        }


def _check_grid(grid, minimum) -> list[Fraction]:
    xs = [Fraction(x) for x in grid]
    if len(xs) < 2 or any(b <= a for a, b in zip(xs, xs[1:])):
        raise DomainViolation("grid must be increasing with at least two points")
    if xs[0] < minimum:
        raise DomainViolation(f"grid must start at x >= {minimum}")
    return xs


def mortici_estimate(adef: ApproximantDef, lam: int, grid, prec: int = 128) -> RateReport:
    """Estimate ``l = lim x**lam (E(x) - E(x+1))`` and check ``x**(lam-1) E -> l/(lam-1)``."""
    xs = _check_grid(grid, 10)
    if lam < 2:
        raise DomainViolation("lambda must be at least 2")
    g, h, logs = [], [], []
    for x in xs:
        e0 = residual(adef, x, prec).E
        e1 = residual(adef, x + 1, prec).E
        _require_tight(e0, f"E({x})", prec)
        f = e0 - e1
        _require_tight(f, f"E({x}) - E({x + 1})", prec)
        g.append(f * x**lam)
        h.append(e0 * x ** (lam - 1))
        logs.append((math.log(x), math.log(abs(float(e0.mid())))))
    rich = [(xs[i + 1], _richardson(xs[i], g[i], xs[i + 1], g[i + 1])) for i in range(len(xs) - 1)]
    l_est = rich[-1][1]
    limit = _richardson(xs[-2], h[-2], xs[-1], h[-1])
    if len(rich) >= 2:
        a, b = float(rich[-2][1].mid()), float(rich[-1][1].mid())
        converged = abs(b - a) <= RICHARDSON_TOLERANCE * abs(b)
    else:
        converged = False
    lead = expected_order(adef)
    if lead is not None:
        order, coeff = lead
        l_exact = coeff if order == lam else Fraction(0) if order > lam else None
        limit_exact = lemma_limit(order, coeff)[1] if order == lam else None
    else:
        order = l_exact = limit_exact = None
    slope = statistics.linear_regression([u for u, _ in logs], [v for _, v in logs]).slope
    return RateReport(
        adef.name, adef.k, lam, l_est, l_exact, order, -slope, limit, limit_exact, converged, rich
    )


def order_fit(adef: ApproximantDef, grid, prec: int = 128) -> float:
    """Negated least-squares slope of ``log|E|`` against ``log x``."""
    xs = [Fraction(x) for x in grid]
    if len(xs) < 2 or max(xs) < 100 * min(xs):
        raise DomainViolation("order fit needs a grid spanning at least two decades")
    us, vs = [], []
    for x in xs:
        e = residual(adef, x, prec).E
        _require_tight(e, f"E({x})", prec, tol=1e-3)
        us.append(math.log(x))
        vs.append(math.log(abs(float(e.mid()))))
    return -statistics.linear_regression(us, vs).slope


def expected_mu(adef: ApproximantDef) -> int:
    if adef.kind is Kind.BURNSIDE:
        return 1
    return expected_order(adef)[0] - 1


# -- inequalities ------------------------------------------------------------


@dataclass(frozen=True)
class Sample:
    x: Fraction
    direction: str
    margin: RigorInterval | None
    precision: int
    note: str = ""

    def to_json(self) -> dict:
        return {
            "x": format_rational(self.x),
            "direction": self.direction,
            "margin": None if self.margin is None else interval_json(self.margin),
            "precision": self.precision,
            "note": self.note,
        }


@dataclass
class InequalityReport:
    theorem: int
    k: int
    approximant: str
    domain_start: Fraction
    samples: list[Sample]
    printed_direction: str
    observed_direction: str
    agrees: bool
    mixed: bool

    @property
    def all_decided(self) -> bool:
        return all(s.direction != UNDECIDED for s in self.samples)

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "k": self.k,
            "approximant": self.approximant,
            "domainStart": format_rational(self.domain_start),
            "printedDirection": self.printed_direction,
            "observedDirection": self.observed_direction,
            "agrees": self.agrees,
            "mixed": self.mixed,
            "allDecided": self.all_decided,
            "samples": [s.to_json() for s in self.samples],
        }


def theorem_approximant(theorem: int, k: int) -> ApproximantDef:
    if theorem not in published.THEOREMS:
        raise ValueError("theorem must be 1, 2, 3 or 4")
    if k not in published.theorem_depths(theorem):
        raise ValueError(f"theorem {theorem} covers k in {published.theorem_depths(theorem)}")
    kind = published.THEOREMS[theorem][0]
    return approximant(kind, k)


def classify(adef: ApproximantDef, x, prec: int, escalate: bool = True) -> Sample:
    """Side of ``Gamma(x+1)`` relative to ``A(x)``; one escalation ``p -> 2p``."""
    x = Fraction(x)
    for p in (prec, 2 * prec) if escalate else (prec,):
        e = residual(adef, x, p).E
        if e.is_positive():
            return Sample(x, GT, e, p)
        if e.is_negative():
            return Sample(x, LT, e, p)
    return Sample(x, UNDECIDED, e, p)


def aggregate(samples: list[Sample]) -> tuple[str, bool]:
    """Uniform direction over decided samples; mixed or undecided gives UNDECIDED."""
    dirs = {s.direction for s in samples}
    mixed = {LT, GT} <= dirs
    if len(dirs) == 1 and UNDECIDED not in dirs:
        return dirs.pop(), mixed
    return UNDECIDED, mixed


def verify_inequality(theorem: int, k: int, grid, prec: int = 128) -> InequalityReport:
    adef = theorem_approximant(theorem, k)
    start = published.domain_start(theorem, k)
    xs = [Fraction(x) for x in grid]
    if not xs:
        raise DomainViolation("empty grid")
    if min(xs) < start:
        raise DomainViolation(f"theorem {theorem} k={k} holds for x >= {start}; got x = {min(xs)}")
    samples = [classify(adef, x, prec) for x in xs]
    observed, mixed = aggregate(samples)
    printed = published.DIRECTIONS[(theorem, k)]
    return InequalityReport(
        theorem, k, adef.name, start, samples, printed, observed, observed == printed, mixed
    )


@dataclass
class ThresholdProbe:
    theorem: int
    k: int
    stated_start: Fraction
    asymptotic_direction: str
    samples: list[Sample]
    crossing: tuple[Fraction, Fraction] | None

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "k": self.k,
            "statedStart": format_rational(self.stated_start),
            "asymptoticDirection": self.asymptotic_direction,
            "crossing": None if self.crossing is None else [format_rational(c) for c in self.crossing],
            "samples": [s.to_json() for s in self.samples],
        }


def probe_threshold(
    theorem: int, k: int, stop: int = 20, prec: int = 128, resolution: Fraction = Fraction(1, 1024)
) -> ThresholdProbe:
    """Scan integers ``1..stop`` and bisect the last change of side before ``stop``.

    Below the stated domain start the correction may have poles; such points
    are recorded with a note instead of a direction.
    """
    adef = theorem_approximant(theorem, k)
    samples = []
    for n in range(1, stop + 1):
        try:
            samples.append(classify(adef, n, prec))
        except SingularPoint as exc:
            samples.append(Sample(Fraction(n), UNDECIDED, None, prec, note=str(exc)))
    final = samples[-1].direction
    last_bad = None
    for s in samples:
        if s.direction != final:
            last_bad = s.x
    crossing = None
    if last_bad is not None:
        lo, hi = last_bad, last_bad + 1
        while hi - lo > resolution:
            mid = (lo + hi) / 2
            try:
                side = classify(adef, mid, prec).direction
            except SingularPoint:
                side = UNDECIDED
            if side == final:
                hi = mid
            else:
                lo = mid
        crossing = (lo, hi)
    return ThresholdProbe(theorem, k, published.domain_start(theorem, k), final, samples, crossing)


def log_grid(start, stop, n: int) -> list[Fraction]:
    """``n`` exact rationals, roughly log-spaced from ``start`` to ``stop`` inclusive."""
    start, stop = Fraction(start), Fraction(stop)
    if n < 2:
        return [start]
    ratio = math.log(stop / start) / (n - 1)
    pts = [start]
    for i in range(1, n - 1):
        v = Fraction(float(start) * math.exp(ratio * i)).limit_denominator(64)
        if v > pts[-1]:
            pts.append(v)
    pts.append(stop)
    return pts

