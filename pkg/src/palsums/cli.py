"""Command-line front end.

Subcommands: bounds, table1, mono, scan-logconcave, kernels, layer,
enumerate, asymptotic.  Output renders as text (default), CSV, or JSON.
CSV is comma-separated with a header row and '\\n' line ends; JSON is one
top-level object per command with a `rows` array and a `config` echo.
Decimal values are emitted as directed-rounded strings (lower bounds
rounded down, upper bounds rounded up), so printed intervals remain valid
and output is bit-stable across runs.

Exit status: 0 only when the command ran and every requested verification
held; 1 when a verification failed or a resource limit was hit; 2 for
usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from . import analysis, bounds
from .digits import count_palindromes, enumerate_palindromes
from .enclosure import format_directed
from .exact import TermBudgetError, layer_sum_exact

FORMATS = ("text", "csv", "json")


@dataclass(frozen=True)
class OutputConfig:
    format: str = "text"
    decimal_digits: int = 7
    precision_bits: int = 128
    term_budget: int = 20_000_000

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.decimal_digits < 1:
            raise ValueError("need at least 1 decimal digit")
        if self.precision_bits < 64:
            raise ValueError("precision must be at least 64 bits")
        if self.term_budget < 1_000:
            raise ValueError("term budget must be at least 1000")
        attainable = int(self.precision_bits * math.log10(2)) - 2
        if self.decimal_digits > attainable:
            raise ValueError(
                f"precision underflow: {self.decimal_digits} decimal digits need "
                f"more than {self.precision_bits} precision bits "
                f"(at most {attainable} digits are attainable)"
            )

    def sum_config(self) -> bounds.SumConfig:
        return bounds.SumConfig(
            precision_bits=self.precision_bits, term_budget=self.term_budget
        )


def _render(command: str, cfg: OutputConfig, rows: list[dict], text_lines: list[str]) -> str:
    if cfg.format == "text":
        return "\n".join(text_lines) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return buf.getvalue()
    payload = {
        "command": command,
        "config": {
            "format": cfg.format,
            "digits": cfg.decimal_digits,
            "precision_bits": cfg.precision_bits,
            "term_budget": cfg.term_budget,
        },
        "rows": rows,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _counterexample_str(ce) -> str:
    return "" if ce is None else f"a={ce[0]};c={ce[1]}"


# ---------------------------------------------------------------------------
# subcommand implementations; each returns (rows, text_lines, ok)
# ---------------------------------------------------------------------------


def _cmd_bounds(args, cfg: OutputConfig):
    params = bounds.BoundParams(args.ell, args.m)
    sc = cfg.sum_config()
    lower = bounds.lower_bound(args.base, params, sc)
    upper = bounds.upper_bound(args.base, params, sc)
    d = cfg.decimal_digits
    lo_s = format_directed(lower.lo, d, "down")
    hi_s = format_directed(upper.hi, d, "up")
    rows = [
        {
            "b": args.base,
            "ell": args.ell,
            "m": args.m,
            "lower": lo_s,
            "upper": hi_s,
        }
    ]
    return rows, [f"{lo_s} <= s_{args.base} <= {hi_s}"], True


def _cmd_table1(args, cfg: OutputConfig):
    sc = cfg.sum_config()
    d = cfg.decimal_digits
    rows = []
    lines = []
    for b in range(args.min, args.max + 1):
        row = analysis.log_concavity_row(b, sc)
        l_s = format_directed(row.L.lo, d, "down")
        m_s = format_directed(row.M.midpoint(), d, "nearest")
        u_s = format_directed(row.U.hi, d, "up")
        rows.append({"b": b, "L": l_s, "M": m_s, "U": u_s})
        lines.append(f"b={b:<4d} L={l_s:<14s} M={m_s:<14s} U={u_s}")
    return rows, lines, True


def _cmd_mono(args, cfg: OutputConfig):
    report = analysis.verify_monotone_chain(args.max, cfg.sum_config())
    d = cfg.decimal_digits
    rows = []
    for p in report.pairs:
        rows.append(
            {
                "b": p.b,
                "upper_hi": format_directed(p.upper_hi, d, "up"),
                "next_lower_lo": format_directed(p.next_lower_lo, d, "down"),
                "separated": p.separated,
            }
        )
    if report.ok:
        lines = [f"chain verified: s_b < s_b' for 2 <= b < b' <= {args.max}"]
    else:
        bad = [p.b for p in report.pairs if not p.separated]
        lines = [f"chain FAILED at b in {bad}"]
    return rows, lines, report.ok


def _cmd_scan(args, cfg: OutputConfig):
    entries = analysis.log_concavity_scan(args.min, args.max, cfg.sum_config())
    d = cfg.decimal_digits
    rows = []
    for e in entries:
        rows.append(
            {
                "b": e.b,
                "L": format_directed(e.row.L.lo, d, "down"),
                "M": format_directed(e.row.M.midpoint(), d, "nearest"),
                "U": format_directed(e.row.U.hi, d, "up"),
                "L_sign": e.l_sign,
                "M_sign": e.m_sign,
                "U_sign": e.u_sign,
            }
        )
    ok = all(e.m_sign == "positive" for e in entries)
    not_pos = [e.b for e in entries if e.m_sign != "positive"]
    if ok:
        lines = [f"M(b) > 0 certified for every b in [{args.min}, {args.max}]"]
    else:
        lines = [f"M(b) positivity NOT certified for b in {not_pos}"]
    return rows, lines, ok


def _cmd_kernels(args, cfg: OutputConfig):
    b = args.base
    sc = cfg.sum_config()
    reports = [
        analysis.kernel_eq1_check(b),
        analysis.kernel_eq2_check(b),
        analysis.kernel_eq3_check(b),
        analysis.tail_inequality_check(b, sc),
    ]
    d = cfg.decimal_digits
    value = analysis.tail_inequality_value(b, sc)
    rows = []
    lines = []
    for r in reports:
        rows.append(
            {
                "b": r.b,
                "kernel": r.kernel_id,
                "holds": r.all_hold,
                "counterexample": _counterexample_str(r.counterexample),
            }
        )
        verdict = "holds" if r.all_hold else f"FAILS at {r.counterexample}"
        lines.append(f"{r.kernel_id}: {verdict}")
    lines.append(
        "tail value in ["
        + format_directed(value.lo, d, "down")
        + ", "
        + format_directed(value.hi, d, "up")
        + "]"
    )
    return rows, lines, all(r.all_hold for r in reports)


def _cmd_layer(args, cfg: OutputConfig):
    b, k = args.base, args.k
    terms = count_palindromes(b, k)
    if args.exact:
        rec = layer_sum_exact(b, k, term_budget=cfg.term_budget)
        value = f"{rec.value.numerator}/{rec.value.denominator}"
        rows = [{"b": b, "k": k, "terms": terms, "value": value}]
        return rows, [value], True
    enc = bounds.layer_sum_enclosure(b, k, cfg.sum_config())
    d = cfg.decimal_digits
    lo_s = format_directed(enc.lo, d, "down")
    hi_s = format_directed(enc.hi, d, "up")
    rows = [{"b": b, "k": k, "terms": terms, "lo": lo_s, "hi": hi_s}]
    return rows, [f"s({b},{k}) in [{lo_s}, {hi_s}]"], True


def _cmd_enumerate(args, cfg: OutputConfig):
    b, k = args.base, args.k
    total = count_palindromes(b, k)
    limit = total if args.limit is None else min(args.limit, total)
    if limit > cfg.term_budget:
        raise TermBudgetError(limit, cfg.term_budget)
    values = []
    for n in enumerate_palindromes(b, k):
        if len(values) >= limit:
            break
        values.append(n)
    rows = [{"i": i, "n": n} for i, n in enumerate(values)]
    return rows, [" ".join(str(n) for n in values)], True


def _cmd_asymptotic(args, cfg: OutputConfig):
    report = analysis.asymptotic_error_metric(args.min, args.max, cfg.sum_config())
    diffs = {b: dv for b, dv in report.diffs}
    rows = [
        {"b": b, "midpoint_diff": f"{dv:.6e}"}
        for b, dv in report.diffs
    ]
    positive = report.diffs_all_positive(args.min, args.max - 1)
    lines = [
        f"max scaled deviation |midpoint - estimate| * b / log b = "
        f"{report.metric:.4f} (worst at b={report.worst_b})",
        f"midpoint differences positive on [{args.min}, {args.max - 1}]: {positive}",
    ]
    if args.max - 1 > 10:
        decreasing = report.diffs_decreasing(max(args.min, 10), args.max - 1)
        lines.append(
            f"midpoint differences decreasing on [{max(args.min, 10)}, {args.max - 1}]: "
            f"{decreasing}"
        )
    return rows, lines, True


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--digits", type=int, default=None, metavar="N")
    common.add_argument("--precision-bits", type=int, default=128, metavar="N")
    common.add_argument("--term-budget", type=int, default=20_000_000, metavar="N")

    parser = argparse.ArgumentParser(
        prog="palsums",
        description="Rigorous bounds and exact sums for reciprocal sums of "
        "base-b palindromes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="two-sided bound for s_b")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--ell", type=int, default=5)
    p.add_argument("--m", type=int, default=5)
    p.set_defaults(handler=_cmd_bounds, default_digits=7)

    p = sub.add_parser(
        "table1", parents=[common], help="log-concavity discriminant table L/M/U"
    )
    p.add_argument("--min", type=int, default=3)
    p.add_argument("--max", type=int, default=20)
    p.set_defaults(handler=_cmd_table1, default_digits=8)

    p = sub.add_parser(
        "mono", parents=[common], help="verify s_b < s_b' for 2 <= b < b' <= max"
    )
    p.add_argument("--max", type=int, default=50)
    p.set_defaults(handler=_cmd_mono, default_digits=7)

    p = sub.add_parser(
        "scan-logconcave", parents=[common], help="certify M(b) > 0 over a base range"
    )
    p.add_argument("--min", type=int, default=3)
    p.add_argument("--max", type=int, default=500)
    p.set_defaults(handler=_cmd_scan, default_digits=8)

    p = sub.add_parser(
        "kernels", parents=[common], help="exhaustive inequality kernels at one base"
    )
    p.add_argument("--base", type=int, required=True)
    p.set_defaults(handler=_cmd_kernels, default_digits=7)

    p = sub.add_parser("layer", parents=[common], help="one per-digit-length layer sum")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="print the reduced fraction")
    p.set_defaults(handler=_cmd_layer, default_digits=7)

    p = sub.add_parser(
        "enumerate", parents=[common], help="list k-digit palindromes in base b"
    )
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(handler=_cmd_enumerate, default_digits=7)

    p = sub.add_parser(
        "asymptotic", parents=[common], help="growth-rate tracking diagnostics"
    )
    p.add_argument("--min", type=int, default=2)
    p.add_argument("--max", type=int, default=500)
    p.set_defaults(handler=_cmd_asymptotic, default_digits=7)

    return parser


def _validate(args, parser: argparse.ArgumentParser) -> OutputConfig:
    checks = {
        "bounds": lambda a: a.base >= 2 or "base must be >= 2",
        "kernels": lambda a: a.base >= 2 or "base must be >= 2",
        "layer": lambda a: (a.base >= 2 and a.k >= 1) or "need base >= 2 and k >= 1",
        "enumerate": lambda a: (a.base >= 2 and a.k >= 1) or "need base >= 2 and k >= 1",
        "table1": lambda a: 3 <= a.min <= a.max or "need 3 <= min <= max (b >= 3 required)",
        "scan-logconcave": lambda a: 3 <= a.min <= a.max or "need 3 <= min <= max",
        "mono": lambda a: a.max >= 2 or "need max >= 2",
        "asymptotic": lambda a: 2 <= a.min <= a.max or "need 2 <= min <= max",
    }
    verdict = checks[args.command](args)
    if verdict is not True:
        parser.error(verdict)
    digits = args.digits if args.digits is not None else args.default_digits
    try:
        return OutputConfig(
            format=args.format,
            decimal_digits=digits,
            precision_bits=args.precision_bits,
            term_budget=args.term_budget,
        )
    except ValueError as exc:
        parser.error(str(exc))


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = _validate(args, parser)
    try:
        rows, text_lines, ok = args.handler(args, cfg)
    except TermBudgetError as exc:
        print(
            f"error: term budget exceeded, need {exc.required} terms "
            f"(budget {exc.budget}); rerun with --term-budget {exc.required}",
            file=sys.stderr,
        )
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_render(args.command, cfg, rows, text_lines))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
