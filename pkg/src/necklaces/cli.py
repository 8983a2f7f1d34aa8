"""Command-line front end.

Subcommands: eval, poly, table, verify, census, scan, plot-data.
Global flags (accepted after the subcommand): --format csv|json,
--output PATH, --budget N, --precision N.

Rational inputs use the exact literal form "p/q" or an integer; decimal
input is rejected so values stay exact end to end.  Decimal output is
truncated, never rounded up, and marked with a trailing ellipsis when
inexact, so emitted plot data never overstates a value near a sign
threshold.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 budget
exceeded.  The environment variable NECKLACE_BUDGET overrides the
default enumeration budget; an explicit --budget flag wins over it.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import analysis, coeffs, necklace, oracles
from .exactpoly import Poly, parse_rational
from .reports import ScanReport

ENV_BUDGET = "NECKLACE_BUDGET"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    output_format: str | None
    output_path: str | None
    budget: int
    precision: int


def render_decimal(value: Fraction, precision: int = 12) -> str:
    """Truncated decimal rendering; appends an ellipsis when digits were cut.

    Truncation is toward zero in magnitude for either sign, so a rendered
    value never looks farther from zero than the exact one.
    """
    if precision < 1:
        raise UsageError(f"precision must be positive, got {precision}")
    sign = "-" if value < 0 else ""
    mag = -value if value < 0 else value
    whole, rem = divmod(mag.numerator, mag.denominator)
    digits = []
    for _ in range(precision):
        rem *= 10
        d, rem = divmod(rem, mag.denominator)
        digits.append(str(d))
    inexact = rem != 0
    if not inexact:
        while digits and digits[-1] == "0":
            digits.pop()
    body = f"{whole}.{''.join(digits)}" if digits else str(whole)
    return f"{sign}{body}{'…' if inexact else ''}"


def _parse_rational_arg(text: str, flag: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError:
        raise UsageError(f"{flag}: not an exact rational (use p/q or an integer): {text!r}")


def _parse_n_list(text: str) -> list[int]:
    """Index list syntax: comma-separated integers and inclusive a..b ranges."""
    out: list[int] = []
    for token in text.split(","):
        token = token.strip()
        m = re.fullmatch(r"(\d+)\.\.(\d+)", token)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            if a > b:
                raise UsageError(f"--n: empty range {token!r}")
            out.extend(range(a, b + 1))
        elif re.fullmatch(r"\d+", token):
            out.append(int(token))
        else:
            raise UsageError(f"--n: bad index token {token!r}")
    if not out:
        raise UsageError("--n: no indices given")
    return out


def _parse_q_spec(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)(?:\^(\d+))?", text.strip())
    if not m:
        raise UsageError(f"--q: expected p or p^m, got {text!r}")
    return int(m.group(1)), int(m.group(2) or 1)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands


def _cmd_eval(args, cfg: RunConfig) -> int:
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    x = _parse_rational_arg(args.x, "--x")
    if x.denominator == 1:
        value = Fraction(necklace.necklace_eval_int(args.n, x.numerator))
    else:
        value = necklace.necklace_eval_exact(args.n, x)
    decimal = render_decimal(value, cfg.precision)
    if cfg.output_format == "json":
        _emit(_json_text({"n": args.n, "x": str(x), "exact": str(value), "decimal": decimal}), cfg.output_path)
    elif cfg.output_format == "csv":
        _emit(_csv_text(["n", "x", "exact", "decimal"], [[args.n, str(x), str(value), decimal]]), cfg.output_path)
    else:
        _emit(f"{value}\n= {decimal}\n", cfg.output_path)
    return EXIT_OK


_POLY_FAMILIES = ("M", "P", "Q", "E", "delta", "g", "bracket")


def _poly_for(family_name: str, n: int, k: int | None) -> Poly:
    fam = necklace.shared_family()
    if family_name == "M":
        return fam.poly(n)
    if family_name == "P":
        return fam.theta_poly(n)
    if family_name == "Q":
        return fam.growth_poly(n)
    if family_name == "E":
        return fam.error_poly(n)
    if family_name == "delta":
        if n < 2:
            raise UsageError("--family delta needs --n >= 2")
        return fam.delta_poly(n)
    if family_name == "g":
        return necklace.geometric_gap_poly(n)
    if family_name == "bracket":
        if k is None:
            raise UsageError("--family bracket needs --k")
        return fam.bracket_poly(n, k)
    raise UsageError(f"unknown polynomial family {family_name!r} (have {', '.join(_POLY_FAMILIES)})")


def _cmd_poly(args, cfg: RunConfig) -> int:
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    p = _poly_for(args.family, args.n, args.k)
    if cfg.output_format == "json":
        payload = {
            "family": args.family,
            "n": args.n,
            "terms": [{"exponent": e, "coefficient": str(c)} for e, c in p.terms()],
        }
        if args.k is not None:
            payload["k"] = args.k
        _emit(_json_text(payload), cfg.output_path)
    elif cfg.output_format == "csv":
        _emit(_csv_text(["exponent", "coefficient"], [[e, str(c)] for e, c in p.terms()]), cfg.output_path)
    else:
        _emit(p.to_string() + "\n", cfg.output_path)
    return EXIT_OK


def _cmd_table(args, cfg: RunConfig) -> int:
    xs = []
    for token in args.x.split(","):
        token = token.strip()
        if not re.fullmatch(r"\d+", token) or int(token) < 1:
            raise UsageError(f"--x: table columns must be integers >= 1, got {token!r}")
        xs.append(int(token))
    if args.n_max < 1:
        raise UsageError(f"--n-max must be >= 1, got {args.n_max}")
    rows = [[n] + [necklace.necklace_eval_int(n, x) for x in xs] for n in range(1, args.n_max + 1)]
    if cfg.output_format == "json":
        payload = {"x": xs, "rows": [{"n": r[0], "values": r[1:]} for r in rows]}
        _emit(_json_text(payload), cfg.output_path)
    else:
        _emit(_csv_text(["n"] + [str(x) for x in xs], rows), cfg.output_path)
    return EXIT_OK


# verify suites: name -> callable(args) -> list[ScanReport]


def _grid_from_args(args, default_start, default_end, default_step, extras=()) -> analysis.RationalGrid:
    start = _parse_rational_arg(args.x_min, "--x-min") if args.x_min else Fraction(default_start)
    end = _parse_rational_arg(args.x_max, "--x-max") if args.x_max else Fraction(default_end)
    step = _parse_rational_arg(args.step, "--step") if args.step else Fraction(default_step)
    if step <= 0:
        raise UsageError(f"--step must be positive, got {step}")
    return analysis.RationalGrid(start, end, step, tuple(extras))


def _suite_product_rule(args) -> list[ScanReport]:
    n_max = args.n_max or 30
    return [
        ScanReport.combine(
            "product-rule",
            f"n in [1, {n_max}]",
            [necklace.verify_product_rule(n) for n in range(1, n_max + 1)],
        )
    ]


def _suite_bracket_product_rule(args) -> list[ScanReport]:
    n_max = args.n_max or 20
    k_max = args.k_max if args.k_max is not None else 5
    reports = [
        necklace.verify_bracket_product_rule(n, k)
        for n in range(1, n_max + 1)
        for k in range(k_max + 1)
    ]
    return [ScanReport.combine("bracket-product-rule", f"n in [1, {n_max}], k in [0, {k_max}]", reports)]


def _suite_moebius_inversion(args) -> list[ScanReport]:
    n_max = args.n_max or 40
    xs = [Fraction(2), Fraction(5, 2), Fraction(3), Fraction(7, 2), Fraction(4)]
    from .reports import ReportBuilder

    b = ReportBuilder("moebius-inversion", f"n in [1, {n_max}], x in {{{', '.join(map(str, xs))}}}")
    for n in range(1, n_max + 1):
        for x in xs:
            b.check(
                necklace.verify_moebius_inversion(n, x),
                f"n={n}, x={x}",
                "sum(d*M_d(x) for d | n) == x^n",
            )
    return [b.build()]


def _suite_bounds(args) -> list[ScanReport]:
    n_max = args.n_max or 40
    grid = _grid_from_args(args, 2, 10, Fraction(1, 2))
    return [analysis.scan_bounds((2, n_max), grid)]


def _suite_positivity_hsuite(args) -> list[ScanReport]:
    n_max = args.n_max or 40
    k_max = args.k_max if args.k_max is not None else 12
    r_max = args.r_max if args.r_max is not None else 12
    return [
        coeffs.positivity_scan(n_max, k_max, r_max),
        coeffs.jordan_gap_scan(200, 20),
    ]


def _suite_normalized_monotone(args) -> list[ScanReport]:
    n_max = args.n_max or 40
    grid = _grid_from_args(args, 1, 10, Fraction(1, 16), analysis.default_grid().extra_points)
    return [analysis.scan_normalized_increasing((2, n_max), grid)]


def _suite_bracket_monotone(args) -> list[ScanReport]:
    n_max = args.n_max or 20
    k_max = args.k_max
    grid = _grid_from_args(args, 1, 10, Fraction(1, 16))
    reports = []
    for n in range(2, n_max + 1):
        top = n if k_max is None else min(n, k_max)
        for k in range(top + 1):
            reports.append(analysis.scan_bracket_normalized(n, k, grid))
    return [ScanReport.combine("bracket-monotone", f"n in [2, {n_max}], k in [0, n]", reports)]


def _suite_derivative_positive(args) -> list[ScanReport]:
    n_max = args.n_max or 40
    k_max = args.k_max if args.k_max is not None else n_max
    grid = _grid_from_args(args, 1, 10, Fraction(1, 16))
    return [analysis.scan_derivative_positive((1, n_max), (1, k_max), grid)]


def _suite_degree_monotone(args) -> list[ScanReport]:
    n_max = args.n_max or 30
    xs = [Fraction(2), Fraction(9, 4), Fraction(5, 2), Fraction(11, 4), Fraction(3), Fraction(4)]
    if args.x_min:
        xs = [_parse_rational_arg(args.x_min, "--x-min")]
    return [
        ScanReport.combine(
            "degree-monotone",
            f"x in {{{', '.join(map(str, xs))}}}, n in [1, {n_max}]",
            [analysis.classify_degree_monotonicity(x, n_max) for x in xs],
        )
    ]


def _suite_ratio_limit(args) -> list[ScanReport]:
    n_max = args.n_max or 60
    xs = [Fraction(2), Fraction(3), Fraction(5)]
    if args.x_min:
        xs = [_parse_rational_arg(args.x_min, "--x-min")]
    return [
        ScanReport.combine(
            "ratio-limit",
            f"x in {{{', '.join(map(str, xs))}}}, n in [4, {n_max}]",
            [analysis.ratio_limit_check(x, n_max) for x in xs],
        )
    ]


def _suite_log_convexity(args) -> list[ScanReport]:
    n_max = args.n_max or 25
    grid = _grid_from_args(
        args, 2, 12, Fraction(1, 4), (Fraction(8) - Fraction(1, 1024), Fraction(8), Fraction(8) + Fraction(1, 1024))
    )
    return [analysis.scan_log_convexity(grid, n_max)]


def _suite_delta_factorizations(args) -> list[ScanReport]:
    return [analysis.verify_delta_factorizations()]


def _suite_negative_dip(args) -> list[ScanReport]:
    n_max = args.n_max or 30
    return [analysis.negative_dip_scan((2, n_max))]


def _suite_shift_monotone(args) -> list[ScanReport]:
    n_max = args.n_max or 40
    grid = _grid_from_args(args, 2, 10, Fraction(1, 4))
    return [analysis.scan_shift_and_dominant(grid, n_max=n_max)]


_SUITES = {
    "product-rule": _suite_product_rule,
    "bracket-product-rule": _suite_bracket_product_rule,
    "moebius-inversion": _suite_moebius_inversion,
    "bounds": _suite_bounds,
    "positivity-hsuite": _suite_positivity_hsuite,
    "normalized-monotone": _suite_normalized_monotone,
    "bracket-monotone": _suite_bracket_monotone,
    "derivative-positive": _suite_derivative_positive,
    "degree-monotone": _suite_degree_monotone,
    "ratio-limit": _suite_ratio_limit,
    "log-convexity": _suite_log_convexity,
    "delta-factorizations": _suite_delta_factorizations,
    "negative-dip": _suite_negative_dip,
    "shift-monotone": _suite_shift_monotone,
}


def _cmd_verify(args, cfg: RunConfig) -> int:
    if args.suite not in _SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; available: {', '.join(sorted(_SUITES))}")
    reports = _SUITES[args.suite](args)
    passed = all(r.passed for r in reports)
    payload = {"suite": args.suite, "passed": passed, "checks": [r.to_dict() for r in reports]}
    _emit(_json_text(payload), cfg.output_path)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


_SCAN_CHECKS = (
    "positive",
    "normalized-monotone",
    "bracket-monotone",
    "derivative-positive",
    "shift-monotone",
    "degree-monotone",
    "ratio-limit",
    "log-convexity",
    "negative-dip",
    "bounds",
)


def _cmd_scan(args, cfg: RunConfig) -> int:
    """Run a single analysis scan with explicit grid/range parameters."""
    name = args.check
    n_max = args.n_max or 30
    if name == "positive":
        grid = _grid_from_args(args, Fraction(17, 16), 10, Fraction(1, 16))
        reports = [analysis.scan_positive((2, n_max), grid)]
    elif name == "normalized-monotone":
        reports = _suite_normalized_monotone(args)
    elif name == "bracket-monotone":
        reports = _suite_bracket_monotone(args)
    elif name == "derivative-positive":
        reports = _suite_derivative_positive(args)
    elif name == "shift-monotone":
        reports = _suite_shift_monotone(args)
    elif name == "degree-monotone":
        reports = _suite_degree_monotone(args)
    elif name == "ratio-limit":
        reports = _suite_ratio_limit(args)
    elif name == "log-convexity":
        reports = _suite_log_convexity(args)
    elif name == "negative-dip":
        reports = _suite_negative_dip(args)
    elif name == "bounds":
        reports = _suite_bounds(args)
    else:
        raise UsageError(f"unknown check {name!r}; available: {', '.join(_SCAN_CHECKS)}")
    passed = all(r.passed for r in reports)
    payload = {"check": name, "passed": passed, "reports": [r.to_dict() for r in reports]}
    _emit(_json_text(payload), cfg.output_path)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _cmd_census(args, cfg: RunConfig) -> int:
    p, m = _parse_q_spec(args.q)
    if args.max_degree < 1:
        raise UsageError(f"--max-degree must be >= 1, got {args.max_degree}")
    try:
        field = oracles.build_field(p, m)
    except ValueError as exc:
        raise UsageError(str(exc))
    report = oracles.census(field, args.max_degree, cfg.budget)
    if cfg.output_format == "json":
        _emit(_json_text(report.to_dict()), cfg.output_path)
    else:
        rows = [[d, b, f, "true" if ok else "false"] for d, b, f, ok in report.rows()]
        _emit(_csv_text(["degree", "brute_count", "formula_count", "match"], rows), cfg.output_path)
    return EXIT_OK if report.all_match else EXIT_VERIFY_FAILED


_PLOT_FAMILIES = ("M", "normalized-M", "P", "ratio", "delta")


def _cmd_plot_data(args, cfg: RunConfig) -> int:
    if args.family not in _PLOT_FAMILIES:
        raise UsageError(f"unknown plot family {args.family!r}; available: {', '.join(_PLOT_FAMILIES)}")
    ns = _parse_n_list(args.n)
    grid = _grid_from_args(args, 1, 5, Fraction(1, 16))
    fam = necklace.shared_family()
    if args.family == "delta" and min(ns) < 2:
        raise UsageError("--family delta needs indices n >= 2")
    if args.family == "ratio" and grid.points() and min(grid.points()) <= 1:
        raise UsageError("--family ratio needs x > 1 (the denominator vanishes at x = 1)")

    def value(n: int, x: Fraction) -> Fraction:
        if args.family == "M":
            return fam.eval_exact(n, x)
        if args.family == "normalized-M":
            if x == 0:
                raise UsageError("--family normalized-M is undefined at x = 0")
            return fam.eval_exact(n, x) / x**n
        if args.family == "P":
            return fam.theta_poly(n)(x)
        if args.family == "ratio":
            return fam.eval_exact(n + 1, x) / fam.eval_exact(n, x)
        return fam.delta_eval(n, x)

    tag = args.family.replace("-", "_")
    header = ["x"] + [f"{tag}_{n}" for n in ns]
    rows = []
    for x in grid.points():
        rows.append([render_decimal(x, cfg.precision)] + [render_decimal(value(n, x), cfg.precision) for n in ns])
    _emit(_csv_text(header, rows), cfg.output_path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None, help="output format")
    common.add_argument("--output", default=None, help="write output to this path instead of stdout")
    common.add_argument("--budget", type=int, default=None, help="enumeration budget (total candidates)")
    common.add_argument("--precision", type=int, default=12, help="decimal digits for renderings")

    parser = argparse.ArgumentParser(
        prog="necklace",
        description="Exact necklace-polynomial evaluation, counting oracles, and verification scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate the degree-n member at a rational point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", required=True, help="rational argument, p/q or integer")

    p = sub.add_parser("poly", parents=[common], help="print one polynomial exactly")
    p.add_argument("--family", default="M", help=f"one of {', '.join(_POLY_FAMILIES)}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="bracket order (family=bracket)")

    p = sub.add_parser("table", parents=[common], help="table of exact integer values")
    p.add_argument("--x", required=True, help="comma-separated integer columns, e.g. 2,3,4,5")
    p.add_argument("--n-max", type=int, default=9)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--x-min", default=None)
    p.add_argument("--x-max", default=None)
    p.add_argument("--step", default=None)

    p = sub.add_parser("scan", parents=[common], help="run a single scan with explicit parameters")
    p.add_argument("--check", required=True, help=f"one of {', '.join(_SCAN_CHECKS)}")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--x-min", default=None)
    p.add_argument("--x-max", default=None)
    p.add_argument("--step", default=None)

    p = sub.add_parser("census", parents=[common], help="finite-field irreducible census vs. the formula")
    p.add_argument("--q", required=True, help="field size, p or p^m with p prime")
    p.add_argument("--max-degree", type=int, required=True)

    p = sub.add_parser("plot-data", parents=[common], help="CSV curves for plotting")
    p.add_argument("--family", required=True, help=f"one of {', '.join(_PLOT_FAMILIES)}")
    p.add_argument("--n", required=True, help="indices: comma list and/or a..b ranges")
    p.add_argument("--x-min", default=None)
    p.add_argument("--x-max", default=None)
    p.add_argument("--step", default=None)

    return parser


_HANDLERS = {
    "eval": _cmd_eval,
    "poly": _cmd_poly,
    "table": _cmd_table,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "census": _cmd_census,
    "plot-data": _cmd_plot_data,
}


def _resolve_budget(flag_value: int | None) -> int:
    if flag_value is not None:
        budget = flag_value
    else:
        env = os.environ.get(ENV_BUDGET)
        if env is not None:
            try:
                budget = int(env)
            except ValueError:
                raise UsageError(f"{ENV_BUDGET}: not an integer: {env!r}")
        else:
            budget = oracles.DEFAULT_BUDGET
    if budget < 1:
        raise UsageError(f"budget must be positive, got {budget}")
    return budget


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            command=args.command,
            output_format=args.format,
            output_path=args.output,
            budget=_resolve_budget(args.budget),
            precision=args.precision,
        )
        return _HANDLERS[args.command](args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except oracles.BudgetExceededError as exc:
        detail = f" (first infeasible degree: {exc.degree})" if exc.degree is not None else ""
        print(f"budget exceeded: {exc}{detail}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
