"""Correction functions and the multiple-correction solver.

A correction ``MC(x)`` is a stack of levels ``kappa / (denominator(x) + tail)``.
A ``NESTED`` level feeds its fraction into the denominator of the level
above it; a ``SUMMED`` level starts a new fraction that is added to the
total. Every family shares one difference functional

    D(x) = E(x) - E(x+1) = -1 + x log(1 + 1/x) + sum_i c_i log(arg_i(x+1) / arg_i(x))

where ``E = log Gamma(x+1) - log A(x)`` and the ``arg_i`` are fixed
polynomials, optionally with ``MC`` added. Each unknown constant is chosen
to kill the lowest surviving coefficient of the expansion of ``D``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Union

from .exact import (
    AsymptoticSeries,
    Polynomial,
    RationalFunction,
    SeriesError,
    as_fraction,
    format_rational,
    series_base_difference,
    series_log_ratio_shift,
)


class Family(str, enum.Enum):
    GOSPER_CF = "GOSPER_CF"
    GOSPER_PRODUCT = "GOSPER_PRODUCT"
    RAMANUJAN_CF = "RAMANUJAN_CF"
    RAMANUJAN_MIXED = "RAMANUJAN_MIXED"


class Attachment(enum.Enum):
    NESTED = "nested"
    SUMMED = "summed"


class _Unknown:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNKNOWN"

    def __reduce__(self):
        return (_Unknown, ())


UNKNOWN = _Unknown()
Value = Union[Fraction, _Unknown]

# Depth the printed tables go to; deeper levels need experimental=True.
DEPTH_CAP = {
    Family.GOSPER_CF: 3,
    Family.GOSPER_PRODUCT: 3,
    Family.RAMANUJAN_CF: 3,
    Family.RAMANUJAN_MIXED: 1,
}

GOSPER_SHIFT = Fraction(23, 90)


class SolverError(ArithmeticError):
    code = "SOLVER_ERROR"

    def __init__(self, message: str, *, unknown: str | None = None, level: int | None = None):
        super().__init__(message)
        self.unknown = unknown
        self.level = level


class NoRationalRoot(SolverError):
    code = "NO_RATIONAL_ROOT"


class NonlinearUnresolved(SolverError):
    code = "NONLINEAR_UNRESOLVED"


@dataclass(frozen=True)
class CorrectionLevel:
    """``kappa / (base(x) + sum_p params[p] x**p + tail)``.

    ``base`` is the fixed monic part of the denominator; ``params`` are
    ``(power, value)`` pairs, highest power first, whose values may be UNKNOWN.
    """

    kappa: Value
    base: Polynomial
    params: tuple[tuple[int, Value], ...]
    attachment: Attachment = Attachment.NESTED
    kappa_name: str = "kappa"
    param_names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.base.degree < 1 or self.base.leading != 1:
            raise ValueError("level denominator must be monic of degree >= 1")
        if any(p >= self.base.degree for p, _ in self.params):
            raise ValueError("parameters may only touch non-leading coefficients")

    def slots(self) -> list:
        """Unknown ordering within a level: kappa, then params high to low degree."""
        return ["kappa"] + [p for p, _ in self.params]

    def value(self, slot) -> Value:
        if slot == "kappa":
            return self.kappa
        for p, v in self.params:
            if p == slot:
                return v
        raise KeyError(slot)

    def name(self, slot) -> str:
        if slot == "kappa":
            return self.kappa_name
        return self.param_names[[p for p, _ in self.params].index(slot)]

    def bind(self, slot, value) -> CorrectionLevel:
        if slot == "kappa":
            return replace(self, kappa=value)
        params = tuple((p, value if p == slot else v) for p, v in self.params)
        return replace(self, params=params)

    def is_solved(self) -> bool:
        return all(self.value(s) is not UNKNOWN for s in self.slots())

    def denominator(self) -> Polynomial:
        den = self.base
        for p, v in self.params:
            if v is UNKNOWN:
                raise SolverError(f"{self.name(p)} is unknown")
            den = den + Polynomial.monomial(p, v)
        return den

    def constants(self) -> dict[str, Value]:
        return {self.name(s): self.value(s) for s in self.slots()}


@dataclass(frozen=True)
class LogTerm:
    """``prefactor * log(arg(x+1)/arg(x))`` with ``arg = base (+ MC)``."""

    prefactor: Fraction
    base: Polynomial
    with_mc: bool


@dataclass(frozen=True)
class CorrectionSpec:
    family: Family | None
    levels: tuple[CorrectionLevel, ...]
    log_terms: tuple[LogTerm, ...]
    # the approximant carries sqrt(scale * pi)
    scale: Fraction = Fraction(2)

    def unknowns(self) -> list[tuple[int, object]]:
        return [
            (i, s)
            for i, lvl in enumerate(self.levels)
            for s in lvl.slots()
            if lvl.value(s) is UNKNOWN
        ]

    def is_solved(self) -> bool:
        return not self.unknowns()

    def bind(self, uid, value) -> CorrectionSpec:
        i, slot = uid
        levels = list(self.levels)
        levels[i] = levels[i].bind(slot, as_fraction(value))
        return replace(self, levels=tuple(levels))

    def truncated(self, k: int) -> CorrectionSpec:
        """Levels ``0..k`` only (``k = -1`` gives MC = 0)."""
        return replace(self, levels=self.levels[: k + 1])

    def name_of(self, uid) -> str:
        i, slot = uid
        return self.levels[i].name(slot)

    def constants(self) -> list[dict[str, Value]]:
        return [lvl.constants() for lvl in self.levels]


def _linear_level(kappa_name, lambda_name, attachment=Attachment.NESTED) -> CorrectionLevel:
    return CorrectionLevel(
        UNKNOWN, Polynomial.x(), ((0, UNKNOWN),), attachment, kappa_name, (lambda_name,)
    )


GOSPER_ARG = Polynomial((Fraction(1, 6), 1))
RAMANUJAN_ARG = Polynomial((Fraction(1, 30), 1, 4, 8))


def family_template(family: Family, k: int) -> CorrectionSpec:
    """Spec for ``family`` with levels ``0..k`` all UNKNOWN."""
    family = Family(family)
    half, sixth = Fraction(1, 2), Fraction(1, 6)
    if family is Family.GOSPER_CF:
        levels = [_linear_level(f"kappa_{j}", f"lambda_{j}") for j in range(k + 1)]
        terms = (LogTerm(half, GOSPER_ARG, True),)
        scale = Fraction(2)
    elif family is Family.GOSPER_PRODUCT:
        first = CorrectionLevel(
            UNKNOWN,
            Polynomial((GOSPER_SHIFT, 1)) ** 2,
            ((0, UNKNOWN),),
            Attachment.NESTED,
            "kappa_0",
            ("lambda_0",),
        )
        levels = [first] + [_linear_level(f"kappa_{j}", f"lambda_{j}") for j in range(1, k + 1)]
        # The printed constants annihilate log(Gamma) - log(Gosper/(1+MC)); see README.
        terms = (LogTerm(half, GOSPER_ARG, False), LogTerm(Fraction(-1), Polynomial((1,)), True))
        scale = Fraction(2)
    elif family is Family.RAMANUJAN_CF:
        levels = [_linear_level(f"a_{j}", f"b_{j}") for j in range(k + 1)]
        terms = (LogTerm(sixth, RAMANUJAN_ARG, True),)
        scale = Fraction(1)
    elif family is Family.RAMANUJAN_MIXED:
        levels = [_linear_level("kappa_0", "lambda_0")]
        if k >= 1:
            levels.append(
                CorrectionLevel(
                    UNKNOWN,
                    Polynomial.monomial(3),
                    ((2, UNKNOWN), (1, UNKNOWN), (0, UNKNOWN)),
                    Attachment.SUMMED,
                    "kappa_1",
                    ("lambda_10", "lambda_11", "lambda_12"),
                )
            )
        if k > 1:
            raise ValueError("RAMANUJAN_MIXED has exactly two levels")
        levels = levels[: k + 1]
        terms = (LogTerm(sixth, RAMANUJAN_ARG, True),)
        scale = Fraction(1)
    else:  # pragma: no cover
        raise ValueError(family)
    return CorrectionSpec(family, tuple(levels), terms, scale)


def spec_from_constants(family: Family, constants: Iterable[dict]) -> CorrectionSpec:
    """Solved spec from per-level ``{name: value}`` tables."""
    constants = list(constants)
    spec = family_template(family, len(constants) - 1)
    for i, table in enumerate(constants):
        lvl = spec.levels[i]
        for slot in lvl.slots():
            spec = spec.bind((i, slot), as_fraction(table[lvl.name(slot)]))
    return spec


# ---------------------------------------------------------------------------
# Collapsing the level structure
# ---------------------------------------------------------------------------


def collapse_levels(levels, x):
    """Evaluate the level structure at ``x``.

    ``x`` may be a Fraction (exact point value) or the identity
    RationalFunction (symbolic collapse); both go through the same
    backward recurrence.
    """
    total = 0
    tail = 0
    for i in range(len(levels) - 1, -1, -1):
        lvl = levels[i]
        if lvl.kappa is UNKNOWN:
            raise SolverError(f"{lvl.kappa_name} is unknown", level=i)
        den = lvl.denominator()
        den_at = RationalFunction(den) if isinstance(x, RationalFunction) else den(x)
        tail = lvl.kappa / (den_at + tail) if lvl.kappa != 0 else 0
        if i == 0 or lvl.attachment is Attachment.SUMMED:
            total = total + tail
            tail = 0
    return total


_X = RationalFunction(Polynomial.x())


def mc_as_rational_function(spec: CorrectionSpec, k: int | None = None) -> RationalFunction:
    """Collapse levels ``0..k`` into one reduced ``P/Q``."""
    levels = spec.levels if k is None else spec.levels[: k + 1]
    if not levels:
        return RationalFunction(Polynomial())
    if any(not lvl.is_solved() for lvl in levels):
        raise SolverError("cannot collapse a correction with UNKNOWN constants")
    return RationalFunction.from_any(collapse_levels(levels, _X))


def log_arguments(spec: CorrectionSpec) -> list[tuple[Fraction, RationalFunction]]:
    """``(prefactor, arg)`` for every log term with MC substituted."""
    mc = mc_as_rational_function(spec)
    out = []
    for term in spec.log_terms:
        arg = RationalFunction(term.base)
        if term.with_mc:
            arg = arg + mc
        out.append((term.prefactor, arg))
    return out


def expand_difference(spec: CorrectionSpec, n: int) -> AsymptoticSeries:
    """Exact truncated series of ``D(x) = E(x) - E(x+1)``."""
    if n < 3:
        raise ValueError("truncation order must be >= 3")
    series = series_base_difference(n)
    for c, arg in log_arguments(spec):
        series = series + series_log_ratio_shift(arg, n).scale(c)
    return series


def default_truncation(k_max: int) -> int:
    return 2 * k_max + 10


# ---------------------------------------------------------------------------
# Solving
# ---------------------------------------------------------------------------

INTERPOLATION_CAP = 4


def _trial_points():
    u = 0
    while True:
        yield Fraction(u)
        u += 1


def _interpolate(points: list[tuple[Fraction, Fraction]]) -> list[Fraction]:
    """Coefficients (low degree first) of the interpolating polynomial."""
    n = len(points)
    xs = [p[0] for p in points]
    dd = [p[1] for p in points]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    poly = Polynomial((dd[-1],))
    for i in range(n - 2, -1, -1):
        poly = poly * Polynomial((-xs[i], 1)) + dd[i]
    return list(poly.coeffs)


def rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """Rational roots of a polynomial given low-degree-first coefficients."""
    import sympy

    u = sympy.Symbol("u")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * u**i for i, c in enumerate(coeffs))
    roots = sympy.Poly(expr, u, domain="QQ").ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


def solve_vanishing(
    coefficient: Callable[[Fraction], Fraction],
    cap: int = INTERPOLATION_CAP,
    *,
    affine: bool = True,
) -> tuple[list[Fraction], str]:
    """Candidate roots of ``coefficient(u) = 0``.

    Tries the affine secant through ``u = 0, 1`` first and checks a third
    point; falls back to exact interpolation of degree ``<= cap``. Returns
    ``(candidates, status)``; callers must confirm candidates by substitution.
    """
    samples: list[tuple[Fraction, Fraction]] = []
    trials = _trial_points()
    while len(samples) < 3:
        u = next(trials)
        try:
            samples.append((u, coefficient(u)))
        except (ZeroDivisionError, SeriesError):
            continue
    (u0, c0), (u1, c1), (u2, c2) = samples
    if c0 == c1 == c2:
        if c0 == 0:
            raise NoRationalRoot("coefficient vanishes identically; unknown is undetermined")
        raise NoRationalRoot("coefficient does not depend on the unknown")
    slope = (c1 - c0) / (u1 - u0)
    if affine and slope and c0 + slope * (u2 - u0) == c2:
        return [u0 - c0 / slope], "affine-solved"
    while len(samples) < cap + 2:
        u = next(trials)
        try:
            samples.append((u, coefficient(u)))
        except (ZeroDivisionError, SeriesError):
            continue
    poly = _interpolate(samples[: cap + 1])
    check_u, check_c = samples[cap + 1]
    if Polynomial(poly)(check_u) != check_c:
        raise NonlinearUnresolved(f"coefficient is not a polynomial of degree <= {cap} in the unknown")
    roots = rational_roots(poly)
    if not roots:
        raise NoRationalRoot("vanishing condition has no rational solution")
    return roots, "polynomial-solved"


def _with_placeholders(spec: CorrectionSpec) -> CorrectionSpec:
    for uid in spec.unknowns():
        spec = spec.bind(uid, 0)
    return spec


def solve_next_unknown(
    spec: CorrectionSpec, uid, n: int | None = None, *, cap: int = INTERPOLATION_CAP
) -> tuple[Fraction, str, int]:
    """Solve ``uid`` so that the lowest surviving coefficient of ``D`` vanishes.

    Unknowns other than ``uid`` are held at 0; by construction they only
    enter at higher orders. Returns ``(value, status, target_order)``.
    """
    if n is None:
        n = default_truncation(len(spec.levels) - 1)
    name = spec.name_of(uid)
    level = uid[0]

    def series_at(u) -> AsymptoticSeries:
        return expand_difference(_with_placeholders(spec.bind(uid, u)), n)

    probes = []
    for u in _trial_points():
        try:
            probes.append(series_at(u))
        except (ZeroDivisionError, SeriesError):
            continue
        if len(probes) == 3:
            break
    target = min(s.min_order for s in probes)
    if target > n:
        raise SolverError(
            f"no surviving coefficient up to order {n} while solving {name}; increase N",
            unknown=name,
            level=level,
        )

    try:
        candidates, status = solve_vanishing(lambda u: series_at(u).coeff(target), cap)
    except SolverError as exc:
        raise type(exc)(f"{name} (level {level}, order {target}): {exc}", unknown=name, level=level)

    confirmed = [u for u in candidates if series_at(u).min_order > target]
    if not confirmed and status == "affine-solved":
        # secant was collinear by coincidence; retry without the affine shortcut
        candidates, status = solve_vanishing(
            lambda u: series_at(u).coeff(target), cap, affine=False
        )
        confirmed = [u for u in candidates if series_at(u).min_order > target]
    if not confirmed:
        raise NoRationalRoot(
            f"{name}: no candidate survives substitution", unknown=name, level=level
        )
    if len(confirmed) > 1:
        raise NonlinearUnresolved(
            f"{name}: several rational roots {confirmed}", unknown=name, level=level
        )
    return confirmed[0], status, target


@dataclass
class LevelResult:
    constants: dict[str, Fraction]
    status: dict[str, str]
    target_orders: dict[str, int]
    leading_order: int
    leading_coeff: Fraction


@dataclass
class DerivationRecord:
    family: Family | None
    trunc_order: int
    levels: list[LevelResult] = field(default_factory=list)
    spec: CorrectionSpec | None = None

    def to_json(self) -> dict:
        out = {"family": self.family.value, "truncationOrder": self.trunc_order, "levels": []}
        for k, lvl in enumerate(self.levels):
            mu, mag = residual_limit(self, k)
            out["levels"].append(
                {
                    "k": k,
                    "constants": {n: format_rational(v) for n, v in lvl.constants.items()},
                    "status": dict(lvl.status),
                    "firstSurvivingOrder": lvl.leading_order,
                    "firstSurvivingCoefficient": format_rational(lvl.leading_coeff),
                    "mu": mu,
                    "limitMagnitude": format_rational(mag),
                }
            )
        return out


def derive_family(
    family: Family, k_max: int, n: int | None = None, *, experimental: bool = False
) -> DerivationRecord:
    """Run the multiple-correction method through level ``k_max``."""
    family = Family(family)
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if k_max > DEPTH_CAP[family] and not experimental:
        raise ValueError(f"{family.value} is capped at k={DEPTH_CAP[family]}")
    n = default_truncation(k_max) if n is None else n
    template = family_template(family, k_max)
    record = DerivationRecord(family, n)
    spec = template.truncated(-1)
    for k, level in enumerate(template.levels):
        spec = CorrectionSpec(spec.family, spec.levels + (level,), spec.log_terms, spec.scale)
        status, orders = {}, {}
        for slot in level.slots():
            uid = (k, slot)
            value, how, order = solve_next_unknown(spec, uid, n)
            spec = spec.bind(uid, value)
            name = spec.name_of(uid)
            status[name], orders[name] = how, order
        lead = expand_difference(spec, n).leading_term()
        if lead is None:
            raise SolverError(f"level {k}: nothing survives to order {n}; increase N", level=k)
        record.levels.append(
            LevelResult(spec.levels[k].constants(), status, orders, lead[0], lead[1])
        )
    record.spec = spec
    return record


def first_surviving(spec: CorrectionSpec, n: int = 16) -> tuple[int, Fraction]:
    """Leading ``(order, coefficient)`` of ``D`` for a solved spec."""
    lead = expand_difference(spec, n).leading_term()
    if lead is None:
        raise SolverError(f"no surviving coefficient up to order {n}; increase N")
    return lead


def lemma_limit(order: int, coeff: Fraction) -> tuple[int, Fraction]:
    """``x**order * D -> l`` gives ``x**(order-1) * E -> l/(order-1)``."""
    if order <= 1:
        raise ValueError("the difference must decay faster than 1/x")
    return order - 1, coeff / (order - 1)


def residual_limit(record: DerivationRecord, k: int) -> tuple[int, Fraction]:
    """``(mu, |l|/(lambda-1))`` for level ``k``; the sign is measured elsewhere."""
    lvl = record.levels[k]
    if lvl.leading_coeff == 0:
        raise SolverError("surviving coefficient is zero at truncation order; increase N")
    mu, limit = lemma_limit(lvl.leading_order, lvl.leading_coeff)
    return mu, abs(limit)


def render_constants_module(records: Iterable[DerivationRecord]) -> str:
    """Python source for the embedded constants table."""
    lines = [
        '"""Correction constants produced by ``derive_family``.',
        "",
        "Generated by ``gamma-sharp constants --emit-source``; do not edit.",
        '"""',
        "",
        "CONSTANTS = {",
    ]
    for rec in records:
        lines.append(f"    {rec.family.value!r}: [")
        for lvl in rec.levels:
            lines.append("        {")
            for name, value in lvl.constants.items():
                lines.append(f"            {name!r}: {format_rational(value)!r},")
            lines.append("        },")
        lines.append("    ],")
    lines.append("}")
    return "\n".join(lines) + "\n"
