"""Exact second differences and one-signed-coefficient positivity certificates.

For ``f(x) = E(x) - E(x+1)`` the second derivative is a rational function:

    f''(x) = -1/(x (1+x)^2) + sum_i c_i [psi_i(x+1) - psi_i(x)],   psi_i = (G_i'/G_i)'

A certificate Taylor-shifts numerator and denominator to the domain start
``a``; if every coefficient of both shifted polynomials has one sign, the
sign of ``f''`` on ``[a, oo)`` follows with no root isolation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .correction import CorrectionSpec, log_arguments
from .exact import Polynomial, RationalFunction, format_rational, log_derivative, rf_derivative


class Verdict(str, enum.Enum):
    ALL_NONNEG = "ALL_NONNEG"
    ALL_NONPOS = "ALL_NONPOS"
    INCONCLUSIVE = "INCONCLUSIVE"


def base_second_difference() -> RationalFunction:
    """``d^2/dx^2 [x log(1 + 1/x)] = -1/(x (1+x)^2)``."""
    x = Polynomial.x()
    return RationalFunction(Polynomial((-1,)), x * Polynomial((1, 1)) ** 2)


def second_difference_rational(spec: CorrectionSpec, k: int | None = None) -> RationalFunction:
    """Exact ``f''`` for ``spec`` truncated to levels ``0..k``."""
    if k is not None:
        spec = spec.truncated(k)
    total = base_second_difference()
    for c, arg in log_arguments(spec):
        psi = rf_derivative(log_derivative(arg))
        total = total + (psi.shift(1) - psi) * c
    return total


def _one_sign(p: Polynomial) -> int:
    """``+1``/``-1`` if all coefficients are >= 0 / <= 0 (and p != 0), else 0."""
    if p.is_zero():
        return 0
    if all(c >= 0 for c in p.coeffs):
        return 1
    if all(c <= 0 for c in p.coeffs):
        return -1
    return 0


@dataclass(frozen=True)
class PositivityCertificate:
    target: RationalFunction
    shift: Fraction
    numerator_shifted: Polynomial
    denominator_shifted: Polynomial
    verdict: Verdict
    denominator_positive: bool

    @property
    def sign(self) -> int:
        return {Verdict.ALL_NONNEG: 1, Verdict.ALL_NONPOS: -1}.get(self.verdict, 0)

    def to_json(self) -> dict:
        return {
            "shift": format_rational(self.shift),
            "verdict": self.verdict.value,
            "denominatorPositive": self.denominator_positive,
            "numeratorDegree": self.numerator_shifted.degree,
            "denominatorDegree": self.denominator_shifted.degree,
            "numeratorShifted": [format_rational(c) for c in self.numerator_shifted.coeffs],
        }


def positivity_certificate(rf: RationalFunction, a) -> PositivityCertificate:
    """Sign of ``rf`` on ``[a, oo)`` from the coefficients of ``num(t+a)`` and ``den(t+a)``."""
    a = Fraction(a)
    num = rf.num.taylor_shift(a)
    den = rf.den.taylor_shift(a)
    dsign = _one_sign(den)
    # den(t+a) one-signed with a nonzero constant term cannot vanish for t >= 0
    if dsign == 0 or den[0] == 0:
        return PositivityCertificate(rf, a, num, den, Verdict.INCONCLUSIVE, False)
    if dsign < 0:
        num, den = -num, -den
    nsign = _one_sign(num)
    verdict = {1: Verdict.ALL_NONNEG, -1: Verdict.ALL_NONPOS}.get(nsign, Verdict.INCONCLUSIVE)
    return PositivityCertificate(rf, a, num, den, verdict, True)


@dataclass(frozen=True)
class TelescopingConclusion:
    steps: tuple[str, ...]
    e_sign: int  # +1: E > 0, -1: E < 0, 0: undecided

    @property
    def direction(self) -> str:
        return {1: "GT", -1: "LT"}.get(self.e_sign, "UNDECIDED")

    def to_json(self) -> dict:
        return {"steps": list(self.steps), "eSign": self.e_sign, "direction": self.direction}


def telescoping_conclusion(cert: PositivityCertificate) -> TelescopingConclusion:
    """Chain ``sign f'' => f' => f => E = sum_j f(x+j)``, using ``f, f' -> 0``."""
    a = format_rational(cert.shift)
    if cert.verdict is Verdict.ALL_NONNEG:
        return TelescopingConclusion(
            (
                f"f'' >= 0 on [{a}, oo)",
                "f' is increasing and tends to 0, so f' < 0",
                "f is decreasing and tends to 0, so f > 0",
                "E(x) = sum_j f(x+j) > 0",
            ),
            1,
        )
    if cert.verdict is Verdict.ALL_NONPOS:
        return TelescopingConclusion(
            (
                f"f'' <= 0 on [{a}, oo)",
                "f' is decreasing and tends to 0, so f' > 0",
                "f is increasing and tends to 0, so f < 0",
                "E(x) = sum_j f(x+j) < 0",
            ),
            -1,
        )
    return TelescopingConclusion(("certificate inconclusive",), 0)
