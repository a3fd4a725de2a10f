"""Base and corrected approximations of Gamma(x+1), evaluated as enclosures.

Every approximant except Burnside's has the shape

    log A(x) = log(scale * pi)/2 + x (log x - 1) + sum_i c_i log arg_i(x)

with the ``(c_i, arg_i)`` taken from a :class:`CorrectionSpec`. The same
spec drives the symbolic difference series, so numeric residuals and exact
expansions describe one and the same function.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _tables
from .correction import (
    CorrectionSpec,
    Family,
    LogTerm,
    collapse_levels,
    log_arguments,
    mc_as_rational_function,
    spec_from_constants,
)
from .exact import Polynomial, RationalFunction, has_root_on
from .interval import (
    RigorInterval,
    iv_const_pi,
    iv_exp,
    iv_expm1,
    iv_from_rational,
    iv_ln,
    iv_mul,
    iv_round,
)
from .oracle import GUARD_BITS, oracle_lngamma


class Kind(str, enum.Enum):
    STIRLING = "STIRLING"
    BURNSIDE = "BURNSIDE"
    GOSPER = "GOSPER"
    RAMANUJAN_BASE = "RAMANUJAN_BASE"
    GOSPER_CF = "GOSPER_CF"
    GOSPER_PRODUCT = "GOSPER_PRODUCT"
    RAMANUJAN_CF = "RAMANUJAN_CF"
    RAMANUJAN_MIXED1 = "RAMANUJAN_MIXED1"


CORRECTED = {
    Kind.GOSPER_CF: Family.GOSPER_CF,
    Kind.GOSPER_PRODUCT: Family.GOSPER_PRODUCT,
    Kind.RAMANUJAN_CF: Family.RAMANUJAN_CF,
    Kind.RAMANUJAN_MIXED1: Family.RAMANUJAN_MIXED,
}

# Theorem 2 states its k=0 and k=2 inequalities on x >= 13 and x >= 6.
_DOMAINS = {(Kind.GOSPER_PRODUCT, 0): Fraction(13), (Kind.GOSPER_PRODUCT, 2): Fraction(6)}


class SingularPoint(ValueError):
    """The correction has a pole (or its log argument vanishes) at x."""


class ApproximantDomainError(ValueError):
    pass


@dataclass(frozen=True)
class ApproximantDef:
    kind: Kind
    k: int | None
    spec: CorrectionSpec | None
    valid_from: Fraction

    @property
    def name(self) -> str:
        return self.kind.value if self.k is None else f"{self.kind.value}({self.k})"

    @property
    def corrected(self) -> bool:
        return self.kind in CORRECTED


def _base_spec(kind: Kind) -> CorrectionSpec | None:
    half, sixth = Fraction(1, 2), Fraction(1, 6)
    if kind is Kind.STIRLING:
        return CorrectionSpec(None, (), (LogTerm(half, Polynomial.x(), False),), Fraction(2))
    if kind is Kind.GOSPER:
        return CorrectionSpec(
            Family.GOSPER_CF, (), (LogTerm(half, Polynomial((sixth, 1)), False),), Fraction(2)
        )
    if kind is Kind.RAMANUJAN_BASE:
        arg = Polynomial((Fraction(1, 30), 1, 4, 8))
        return CorrectionSpec(Family.RAMANUJAN_CF, (), (LogTerm(sixth, arg, False),), Fraction(1))
    return None


def embedded_constants(family: Family) -> list[dict[str, Fraction]]:
    return [{n: Fraction(v) for n, v in lvl.items()} for lvl in _tables.CONSTANTS[family.value]]


@lru_cache(maxsize=None)
def approximant(kind, k: int | None = None) -> ApproximantDef:
    """Look up a definition; corrected kinds are checked pole-free on their domain."""
    kind = Kind(kind)
    if kind not in CORRECTED:
        if k is not None:
            raise ValueError(f"{kind.value} takes no correction depth")
        return ApproximantDef(kind, None, _base_spec(kind), Fraction(1))
    family = CORRECTED[kind]
    table = embedded_constants(family)
    if kind is Kind.RAMANUJAN_MIXED1:
        k = 1 if k is None else k
        if k != 1:
            raise ValueError("RAMANUJAN_MIXED1 has exactly one correction level")
    if k is None or not 0 <= k < len(table):
        raise ValueError(f"{kind.value} needs k in 0..{len(table) - 1}")
    spec = spec_from_constants(family, table[: k + 1])
    adef = ApproximantDef(kind, k, spec, _DOMAINS.get((kind, k), Fraction(1)))
    bad = singular_on_domain(adef)
    if bad:
        raise SingularPoint(f"{adef.name} is not pole-free on x >= {adef.valid_from}: {bad}")
    return adef


def all_approximants() -> list[ApproximantDef]:
    defs = [approximant(k) for k in (Kind.STIRLING, Kind.BURNSIDE, Kind.GOSPER, Kind.RAMANUJAN_BASE)]
    for kind in (Kind.GOSPER_CF, Kind.GOSPER_PRODUCT, Kind.RAMANUJAN_CF):
        defs += [approximant(kind, k) for k in range(4)]
    defs.append(approximant(Kind.RAMANUJAN_MIXED1))
    return defs


def singular_on_domain(adef: ApproximantDef) -> list[str]:
    """Exact Sturm check that MC has no pole and every log argument stays nonzero."""
    if adef.spec is None:
        return []
    problems = []
    a = adef.valid_from
    mc = mc_as_rational_function(adef.spec)
    if has_root_on(mc.den, a):
        problems.append("MC denominator vanishes")
    for c, arg in log_arguments(adef.spec):
        if has_root_on(arg.num, a):
            problems.append(f"log argument with prefactor {c} vanishes")
    return problems


def cf_approximant(levels, n: int, x) -> Fraction:
    """Exact value of the depth-``n`` truncation (levels ``0..n``) at ``x``."""
    x = Fraction(x)
    levels = tuple(levels)[: n + 1]
    if not levels:
        return Fraction(0)
    try:
        return Fraction(collapse_levels(levels, x))
    except ZeroDivisionError:
        raise SingularPoint(f"continued fraction has a pole at x={x}") from None


def _log_arguments_at(adef: ApproximantDef, x: Fraction) -> list[tuple[Fraction, Fraction]]:
    out = []
    mc = None
    for term in adef.spec.log_terms:
        value = term.base(x)
        if term.with_mc:
            if mc is None:
                rf = mc_as_rational_function(adef.spec)
                if rf.den(x) == 0:
                    raise SingularPoint(f"{adef.name}: MC has a pole at x={x}")
                mc = rf(x)
            value += mc
        if value <= 0:
            raise SingularPoint(f"{adef.name}: log argument is {value} at x={x}")
        out.append((term.prefactor, value))
    return out


def log_approx(adef: ApproximantDef, x, prec: int = 128) -> RigorInterval:
    """Enclosure of ``log A(x)``; MC is evaluated exactly before one conversion."""
    x = Fraction(x)
    if x <= 0:
        raise ApproximantDomainError("approximants are defined for x > 0")
    wp = prec + GUARD_BITS
    pi = iv_const_pi(wp)
    if adef.kind is Kind.BURNSIDE:
        y = x + Fraction(1, 2)
        body = iv_mul(iv_from_rational(y, wp), iv_ln(iv_from_rational(y, wp)) - 1)
        return iv_round(iv_ln(pi * 2) * Fraction(1, 2) + body, prec)
    spec = adef.spec
    xr = iv_from_rational(x, wp)
    total = iv_ln(pi * spec.scale) * Fraction(1, 2) + iv_mul(xr, iv_ln(xr) - 1)
    for c, value in _log_arguments_at(adef, x):
        total = total + iv_ln(iv_from_rational(value, wp)) * c
    return iv_round(total, prec)


def eval_approx(adef: ApproximantDef, x, prec: int = 128) -> RigorInterval:
    """Enclosure of ``A(x)``, the approximation to ``Gamma(x+1)``."""
    return iv_round(iv_exp(log_approx(adef, x, prec + GUARD_BITS)), prec)


@dataclass(frozen=True)
class ResidualSample:
    x: Fraction
    E: RigorInterval
    relE: RigorInterval


def residual(adef: ApproximantDef, x, prec: int = 128) -> ResidualSample:
    """``E = log Gamma(x+1) - log A(x)`` and ``relE = exp(E) - 1``."""
    x = Fraction(x)
    e = oracle_lngamma(x + 1, prec) - log_approx(adef, x, prec)
    return ResidualSample(x, e, iv_expm1(e))
