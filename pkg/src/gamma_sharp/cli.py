"""Command-line front end.

Exit codes: 0 all checks agree with the published claims, 1 completed with
disagreements, 2 inconclusive (enclosure width, certificate, solver), 3 usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import published
from .analysis import (
    UNDECIDED,
    DomainViolation,
    WidthExceeded,
    mortici_estimate,
    theorem_approximant,
    verify_inequality,
)
from .approximants import (
    Kind,
    SingularPoint,
    approximant,
    embedded_constants,
    eval_approx,
    residual,
)
from .certificates import positivity_certificate, second_difference_rational, telescoping_conclusion
from .correction import (
    DEPTH_CAP,
    Family,
    SolverError,
    derive_family,
    first_surviving,
    lemma_limit,
    render_constants_module,
    spec_from_constants,
)
from .exact import format_rational
from .interval import DEFAULT_PRECISION, format_interval, interval_json
from .oracle import OracleDomainError, oracle_gamma, oracle_lngamma, stirling_plan, theta_probe
from .report import FAMILY_DEPTH, discrepancy_report, render_markdown

SCHEMA_VERSION = 1
EXIT_AGREE, EXIT_DISAGREE, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3

FAMILIES = {f.value.lower().replace("_", "-"): f for f in Family}
KINDS = {k.value.lower().replace("_", "-"): k for k in Kind}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- argument parsing helpers -------------------------------------------------


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def parse_grid(spec: str) -> list[Fraction]:
    """``start:stop:scheme[:n]`` with schemes linear, log10 and pow2.

    linear: ``n`` points (default: unit steps); log10: ``n`` points per decade
    (default 4); pow2: ``start * 2**i`` up to ``stop``. Points are exact
    rationals; log10 points are rounded to denominators <= 64.
    """
    parts = spec.split(":")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError("grid must look like start:stop:scheme[:n]")
    start, stop = rational(parts[0]), rational(parts[1])
    scheme = parts[2]
    n = int(parts[3]) if len(parts) == 4 else None
    if start <= 0 or stop < start:
        raise argparse.ArgumentTypeError("grid needs 0 < start <= stop")
    if scheme == "linear":
        if n is None:
            count = int(stop - start) + 1
            return [start + i for i in range(count)]
        if n < 2:
            return [start]
        return [start + (stop - start) * Fraction(i, n - 1) for i in range(n)]
    if scheme == "log10":
        per = 4 if n is None else n
        if per < 1:
            raise argparse.ArgumentTypeError("log10 needs at least one point per decade")
        steps = max(1, math.ceil(math.log10(stop / start) * per))
        pts = [start]
        for i in range(1, steps):
            v = Fraction(float(start) * 10 ** (i / per)).limit_denominator(64)
            if pts[-1] < v < stop:
                pts.append(v)
        if stop > start:
            pts.append(stop)
        return pts
    if scheme == "pow2":
        pts, v = [], start
        while v <= stop:
            pts.append(v)
            v *= 2
        return pts
    raise argparse.ArgumentTypeError(f"unknown grid scheme {scheme!r}")


def _grid(text: str) -> list[Fraction]:
    return parse_grid(text)


def default_precision() -> int:
    env = os.environ.get("GAMMA_SHARP_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"GAMMA_SHARP_PRECISION must be an integer, got {env!r}") from None
    return DEFAULT_PRECISION


def _lookup_approximant(name: str, k: int | None):
    kind = KINDS[name]
    if kind is Kind.RAMANUJAN_MIXED1 and k is None:
        k = 1
    try:
        return approximant(kind, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- output ---------------------------------------------------------------------


def _config(args) -> dict:
    skip = {"func", "output", "midpoint"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(value, Fraction):
            value = format_rational(value)
        elif isinstance(value, list):
            value = [format_rational(v) if isinstance(v, Fraction) else v for v in value]
        out[key] = value
    return out


def emit(args, result, rows: list[dict] | None = None) -> None:
    if getattr(args, "format", "json") == "csv" and rows is not None:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        doc = {
            "schemaVersion": SCHEMA_VERSION,
            "command": args.command,
            "config": _config(args),
            "result": result,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        text = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def midpoint(args, label: str, iv) -> None:
    if args.midpoint:
        print(f"{label}: {float(iv.mid()):.15g}", file=sys.stderr)


# -- commands -------------------------------------------------------------------


def cmd_derive(args) -> int:
    family = FAMILIES[args.family]
    if not 0 <= args.k <= DEPTH_CAP[family] and not args.experimental:
        raise UsageError(f"--k for {args.family} must be in 0..{DEPTH_CAP[family]}")
    try:
        record = derive_family(family, args.k, args.truncation, experimental=args.experimental)
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    emit(args, record.to_json())
    return EXIT_AGREE


def cmd_constants(args) -> int:
    if args.emit_source:
        records = [derive_family(f, k) for f, k in FAMILY_DEPTH.items()]
        text = render_constants_module(records)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_AGREE
    doc = {}
    for family in FAMILY_DEPTH:
        table = embedded_constants(family)
        spec = spec_from_constants(family, table)
        levels = []
        for k, consts in enumerate(table):
            order, coeff = first_surviving(spec.truncated(k), 2 * k + 16)
            mu, limit = lemma_limit(order, coeff)
            levels.append(
                {
                    "k": k,
                    "constants": {n: format_rational(v) for n, v in consts.items()},
                    "mu": mu,
                    "limitMagnitude": format_rational(abs(limit)),
                }
            )
        doc[family.value] = levels
    emit(args, doc)
    return EXIT_AGREE


def cmd_eval(args) -> int:
    adef = _lookup_approximant(args.family, args.k)
    p = args.precision
    value = eval_approx(adef, args.x, p)
    sample = residual(adef, args.x, p)
    midpoint(args, "value", value)
    emit(
        args,
        {
            "approximant": adef.name,
            "x": format_rational(args.x),
            "value": interval_json(value),
            "E": interval_json(sample.E),
            "relE": interval_json(sample.relE),
        },
    )
    return EXIT_AGREE


def _all_names() -> list[str]:
    names = ["stirling", "burnside", "gosper", "ramanujan-base"]
    for kind in ("gosper-cf", "gosper-product", "ramanujan-cf"):
        names += [f"{kind}:{k}" for k in range(4)]
    return names + ["ramanujan-mixed1:1"]


def cmd_table(args) -> int:
    selected = args.families.split(",") if args.families else _all_names()
    defs = []
    for item in selected:
        name, _, k = item.partition(":")
        if name not in KINDS:
            raise UsageError(f"unknown approximant {name!r}")
        defs.append(_lookup_approximant(name, int(k) if k else None))
    rows = []
    for x in args.grid:
        row = {"x": format_rational(x)}
        for adef in defs:
            iv = eval_approx(adef, x, args.precision) if args.quantity == "value" else residual(adef, x, args.precision).E
            row[adef.name] = format_interval(iv)
        rows.append(row)
    if args.format == "json":
        emit(args, {"quantity": args.quantity, "rows": rows})
    else:
        emit(args, None, rows)
    return EXIT_AGREE


def cmd_residual(args) -> int:
    adef = _lookup_approximant(args.family, args.k)
    rows, out = [], []
    for x in args.grid:
        s = residual(adef, x, args.precision)
        midpoint(args, f"E({format_rational(x)})", s.E)
        rows.append({"x": format_rational(x), "E": format_interval(s.E), "relE": format_interval(s.relE)})
        out.append({"x": format_rational(x), "E": interval_json(s.E), "relE": interval_json(s.relE)})
    emit(args, {"approximant": adef.name, "samples": out}, rows)
    return EXIT_AGREE


def cmd_rate(args) -> int:
    adef = _lookup_approximant(args.family, args.k)
    try:
        rep = mortici_estimate(adef, args.lam, args.grid, args.precision)
    except WidthExceeded as exc:
        print(f"WIDTH_EXCEEDED: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    midpoint(args, "limit", rep.limit_check)
    emit(args, rep.to_json())
    if not rep.converged:
        return EXIT_INCONCLUSIVE
    err = rep.limit_relative_error()
    if err is None:
        return EXIT_INCONCLUSIVE
    return EXIT_AGREE if err <= 0.01 else EXIT_DISAGREE


def cmd_verify(args) -> int:
    depths = published.theorem_depths(args.theorem)
    ks = depths if args.k is None else [args.k]
    if any(k not in depths for k in ks):
        raise UsageError(f"theorem {args.theorem} covers k in {depths}")
    reports = [verify_inequality(args.theorem, k, args.grid, args.precision) for k in ks]
    rows = [
        {
            "theorem": r.theorem,
            "k": r.k,
            "x": format_rational(s.x),
            "direction": s.direction,
            "margin": format_interval(s.margin) if s.margin is not None else "",
            "printed": r.printed_direction,
        }
        for r in reports
        for s in r.samples
    ]
    emit(args, {"reports": [r.to_json() for r in reports]}, rows)
    for r in reports:
        print(
            f"theorem {r.theorem} k={r.k}: observed {r.observed_direction}, "
            f"printed {r.printed_direction}, agrees={r.agrees}",
            file=sys.stderr,
        )
    if any(r.observed_direction == UNDECIDED for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_AGREE if all(r.agrees for r in reports) else EXIT_DISAGREE


def cmd_certify(args) -> int:
    try:
        adef = theorem_approximant(args.theorem, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    start = published.domain_start(args.theorem, args.k) if args.shift is None else args.shift
    rf = second_difference_rational(adef.spec)
    cert = positivity_certificate(rf, start)
    chain = telescoping_conclusion(cert)
    printed = published.SECOND_DIFFERENCE_SIGN[(args.theorem, args.k)]
    emit(
        args,
        {
            "approximant": adef.name,
            "certificate": cert.to_json(),
            "conclusion": chain.to_json(),
            "printedSign": printed,
            "agrees": cert.sign == printed,
        },
    )
    if cert.sign == 0:
        return EXIT_INCONCLUSIVE
    return EXIT_AGREE if cert.sign == printed else EXIT_DISAGREE


def cmd_oracle(args) -> int:
    p = args.precision
    if args.what == "theta":
        result = {"theta": interval_json(theta_probe(args.x, p))}
    elif args.what == "gamma":
        result = {"gamma": interval_json(oracle_gamma(args.x, p))}
    else:
        result = {"lngamma": interval_json(oracle_lngamma(args.x, p))}
    result["x"] = format_rational(args.x)
    result["plan"] = stirling_plan(args.x, p).to_json()
    emit(args, result)
    return EXIT_AGREE


def cmd_report(args) -> int:
    doc = discrepancy_report(args.precision, args.points, fit=not args.no_fit)
    if args.markdown:
        text = render_markdown(doc)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        emit(args, doc)
    bad = sum(s["disagreements"] for s in doc["summary"].values())
    return EXIT_AGREE if bad == 0 else EXIT_DISAGREE


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--precision", "-p", type=int, default=None, help="working precision in bits")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", default=None, help="write to this path instead of stdout")
    common.add_argument("--midpoint", action="store_true", help="print midpoints to stderr")

    parser = _Parser(prog="gamma-sharp", description="Corrected gamma-function approximations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("derive", parents=[common], help="derive correction constants")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--truncation", type=int, default=None, help="series truncation order N")
    p.add_argument("--experimental", action="store_true", help="allow depths beyond the cap")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("constants", parents=[common], help="show the embedded constants")
    p.add_argument("--emit-source", action="store_true", help="regenerate the constants module")
    p.set_defaults(func=cmd_constants)

    def approx_args(p):
        p.add_argument("--family", choices=sorted(KINDS), required=True)
        p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("eval", parents=[common], help="evaluate an approximant")
    approx_args(p)
    p.add_argument("--x", type=rational, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", parents=[common], help="tabulate approximants over a grid")
    p.add_argument("--grid", type=_grid, required=True)
    p.add_argument("--families", default=None, help="comma list like gosper-cf:1,stirling")
    p.add_argument("--quantity", choices=("value", "E"), default="value")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("residual", parents=[common], help="E(x) = log Gamma(x+1) - log A(x)")
    approx_args(p)
    p.add_argument("--grid", type=_grid, required=True)
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("rate", parents=[common], help="Mortici-lemma limit estimate")
    approx_args(p)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--grid", type=_grid, default=parse_grid("125:1000:pow2"))
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("verify", parents=[common], help="sampled inequality check")
    p.add_argument("--theorem", type=int, choices=sorted(published.THEOREMS), required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--grid", type=_grid, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", parents=[common], help="positivity certificate for f''")
    p.add_argument("--theorem", type=int, choices=sorted(published.THEOREMS), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--shift", type=rational, default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("oracle", parents=[common], help="reference log-gamma values")
    p.add_argument("--x", type=rational, required=True)
    p.add_argument("--what", choices=("lngamma", "gamma", "theta"), default="lngamma")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("report", parents=[common], help="discrepancy report")
    p.add_argument("--points", type=int, default=40)
    p.add_argument("--no-fit", action="store_true", help="skip the numeric order fits")
    p.add_argument("--markdown", action="store_true")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.precision is None:
            args.precision = default_precision()
        if args.precision < 32:
            raise UsageError("precision must be at least 32 bits")
        return args.func(args)
    except (UsageError, DomainViolation, OracleDomainError, SingularPoint) as exc:
        print(f"gamma-sharp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
