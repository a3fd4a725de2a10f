"""Side-by-side comparison of published claims with derived and measured values."""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

from . import published
from .analysis import (
    expected_mu,
    log_grid,
    mortici_estimate,
    order_fit,
    probe_threshold,
    theorem_approximant,
    verify_inequality,
)
from .approximants import approximant
from .certificates import positivity_certificate, second_difference_rational, telescoping_conclusion
from .correction import (
    GOSPER_ARG,
    Family,
    LogTerm,
    derive_family,
    expand_difference,
    family_template,
    first_surviving,
    lemma_limit,
)
from .exact import Polynomial, format_rational
from .interval import format_interval

FAMILY_DEPTH = {
    Family.GOSPER_CF: 3,
    Family.GOSPER_PRODUCT: 3,
    Family.RAMANUJAN_CF: 3,
    Family.RAMANUJAN_MIXED: 1,
}


def _row(item: str, printed, artifact, agrees: bool, **extra) -> dict:
    return {"item": item, "printed": printed, "artifact": artifact, "agrees": agrees, **extra}


def constants_table() -> list[dict]:
    rows = []
    for family, k_max in FAMILY_DEPTH.items():
        record = derive_family(family, k_max)
        for printed, level in zip(published.CONSTANTS[family.value], record.levels):
            for name, text in printed.items():
                derived = level.constants[name]
                rows.append(
                    _row(f"{family.value} {name}", text, format_rational(derived), derived == Fraction(text))
                )
    return rows


def series_table() -> list[dict]:
    rows = []
    base = expand_difference(family_template(Family.GOSPER_CF, 0).truncated(-1), 6)
    for order, text in published.GOSPER_BASE_SERIES.items():
        got = base.coeff(order)
        rows.append(
            _row(
                f"GOSPER base difference, x^-{order}",
                text,
                format_rational(got),
                got == Fraction(text),
                magnitudeAgrees=abs(got) == abs(Fraction(text)),
            )
        )
    for name, claim in published.LEADING.items():
        order, coeff = first_surviving(_approximant_from_label(name).spec)
        rows.append(
            _row(
                f"{name} leading difference coefficient",
                f"{claim['coefficient']} x^-{claim['order']}",
                f"{format_rational(coeff)} x^-{order}",
                order == claim["order"] and coeff == Fraction(claim["coefficient"]),
                magnitudeAgrees=order == claim["order"] and abs(coeff) == Fraction(claim["coefficient"]),
            )
        )
    return rows


def _approximant_from_label(label: str):
    if "(" in label:
        kind, k = label.rstrip(")").split("(")
        return approximant(kind, int(k))
    return approximant(label)


def limits_table(prec: int = 128) -> list[dict]:
    rows = []
    grid = [125, 250, 500, 1000]
    for name, claim in published.LEADING.items():
        adef = _approximant_from_label(name)
        order, coeff = first_surviving(adef.spec)
        mu, limit = lemma_limit(order, coeff)
        rate = mortici_estimate(adef, order, grid, prec)
        measured = rate.limit_check
        target = Fraction(claim["limit"])
        rel = abs(abs(measured.mid()) / target - 1)
        rows.append(
            _row(
                f"{name}: lim x^{mu} E(x)",
                claim["limit"],
                format_rational(limit),
                limit == target,
                magnitudeAgrees=abs(limit) == target,
                measured=format_interval(measured, 12),
                measuredRelativeError=float(rel),
            )
        )
    return rows


def literal_product_spec(spec):
    """Theorem 2 spec with the approximant read literally as Gosper * (1 + MC)."""
    terms = (LogTerm(Fraction(1, 2), GOSPER_ARG, False), LogTerm(Fraction(1), Polynomial((1,)), True))
    return replace(spec, log_terms=terms)


def orders_table(fit: bool = True, fit_points: int = 12) -> list[dict]:
    rows = []
    grid = log_grid(100, 10000, fit_points)
    for theorem, (_, mu_of) in published.THEOREMS.items():
        for k in published.theorem_depths(theorem):
            adef = theorem_approximant(theorem, k)
            mu = expected_mu(adef)
            extra = {}
            if fit:
                extra["fitted"] = round(order_fit(adef, grid, 384), 4)
            rows.append(_row(f"theorem {theorem}, {adef.name}: mu", mu_of(k), mu, mu == mu_of(k), **extra))
    for k in range(4):
        spec = literal_product_spec(theorem_approximant(2, k).spec)
        order, _ = first_surviving(spec)
        rows.append(
            _row(
                f"theorem 2, k={k}: mu with the literal Gosper*(1+MC) form",
                2 * k + 5,
                order - 1,
                order - 1 == 2 * k + 5,
            )
        )
    return rows


def directions_table(points: int = 40, prec: int = 128) -> list[dict]:
    rows = []
    for theorem in published.THEOREMS:
        for k in published.theorem_depths(theorem):
            start = published.domain_start(theorem, k)
            rep = verify_inequality(theorem, k, log_grid(start, 10000, points), prec)
            rows.append(
                _row(
                    f"theorem {theorem}, {rep.approximant}: side of Gamma(x+1)",
                    rep.printed_direction,
                    rep.observed_direction,
                    rep.agrees,
                    allDecided=rep.all_decided,
                    domainStart=format_rational(start),
                )
            )
    return rows


def certificates_table(depths: dict | None = None) -> list[dict]:
    rows = []
    for theorem in published.THEOREMS:
        for k in published.theorem_depths(theorem):
            if depths is not None and k > depths.get(theorem, 3):
                continue
            adef = theorem_approximant(theorem, k)
            start = published.domain_start(theorem, k)
            cert = positivity_certificate(second_difference_rational(adef.spec), start)
            chain = telescoping_conclusion(cert)
            printed = published.SECOND_DIFFERENCE_SIGN[(theorem, k)]
            rows.append(
                _row(
                    f"theorem {theorem}, {adef.name}: sign of f'' on [{format_rational(start)}, oo)",
                    "+" if printed > 0 else "-",
                    {1: "+", -1: "-"}.get(cert.sign, "?"),
                    cert.sign == printed,
                    verdict=cert.verdict.value,
                    deducedDirection=chain.direction,
                )
            )
    return rows


def thresholds_table(prec: int = 128) -> list[dict]:
    rows = []
    for (theorem, k), start in published.DOMAIN_START.items():
        probe = probe_threshold(theorem, k, stop=int(start) + 7, prec=prec)
        lo, hi = probe.crossing if probe.crossing else (None, None)
        rows.append(
            _row(
                f"theorem {theorem}, k={k}: start of the inequality",
                f"x >= {format_rational(start)}",
                "no side change" if lo is None else f"side changes in [{float(lo):.4f}, {float(hi):.4f}]",
                lo is None or hi <= start,
                asymptoticDirection=probe.asymptotic_direction,
            )
        )
    return rows


def discrepancy_report(
    prec: int = 128, points: int = 40, fit: bool = True, certificate_depths: dict | None = None
) -> dict:
    """All tables plus disagreement counts."""
    tables = {
        "constants": constants_table(),
        "series": series_table(),
        "limits": limits_table(prec),
        "orders": orders_table(fit),
        "directions": directions_table(points, prec),
        "secondDifferences": certificates_table(certificate_depths),
        "thresholds": thresholds_table(prec),
    }
    summary = {
        name: {"rows": len(rows), "disagreements": sum(not r["agrees"] for r in rows)}
        for name, rows in tables.items()
    }
    return {"tables": tables, "summary": summary}


def render_markdown(doc: dict) -> str:
    lines = ["# Discrepancy report", ""]
    for name, rows in doc["tables"].items():
        s = doc["summary"][name]
        lines += [f"## {name} ({s['disagreements']} of {s['rows']} disagree)", ""]
        lines += ["| item | printed | artifact | agrees | notes |", "|---|---|---|---|---|"]
        for r in rows:
            notes = "; ".join(
                f"{k}={v}" for k, v in r.items() if k not in ("item", "printed", "artifact", "agrees")
            )
            mark = "yes" if r["agrees"] else "**no**"
            lines.append(f"| {r['item']} | {r['printed']} | {r['artifact']} | {mark} | {notes} |")
        lines.append("")
    return "\n".join(lines)
