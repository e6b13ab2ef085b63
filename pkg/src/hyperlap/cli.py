"""Command-line interface: ``hyperlap {eval,table,verify,plot}``.

Exit codes: 0 success, 1 evaluation error or failed verification,
2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import math
import os
import sys
from dataclasses import dataclass

from .errors import ConvergenceError, KernelError
from .kernel import (DEFAULT_TOL, RHO_MIN, ROUTES, EvalRoute, evaluate_i,
                     normalization_constant)
from .plot import line_chart
from .verification import REPORT_HEADER, run_all

TABLE_HEADER = ("rho", "I_quadrature", "I_sum", "I_hyp", "I_hyp_euler", "I_legendre",
                "max_rel_diff")
TABLE_RADII = (0.5, 1.0, 2.0)
EXIT_ROUTE_ERROR = 1
EXIT_USAGE = 2
EXIT_IO_ERROR = 3


@dataclass(frozen=True)
class TableRow:
    rho: float
    value_per_route: dict
    max_rel_diff: float

    def cells(self) -> list[str]:
        values = [self.value_per_route.get(r) for r in ROUTES]
        return ([repr(self.rho)] + ["" if v is None else repr(v) for v in values]
                + [repr(self.max_rel_diff)])


def log_grid(lo: float, hi: float, steps: int) -> list[float]:
    ratio = hi / lo
    grid = [lo * ratio ** (i / (steps - 1)) for i in range(steps)]
    grid[0], grid[-1] = lo, hi
    return grid


def max_rel_diff(values) -> float:
    vals = [v for v in values if v is not None]
    diffs = [abs(a - b) / max(abs(a), abs(b))
             for a, b in itertools.combinations(vals, 2) if max(abs(a), abs(b)) > 0]
    return max(diffs, default=0.0)


def table_row(d: int, rho: float, tol: float) -> TableRow:
    values = {}
    for route in ROUTES:
        try:
            values[route] = evaluate_i(d, rho, route, tol).value
        except (KernelError, ConvergenceError):
            continue
    return TableRow(rho, values, max_rel_diff(values.values()))


def _env_tol() -> float:
    raw = os.environ.get("HYPERLAP_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        tol = math.nan
    if not tol > 0:
        print(f"hyperlap: error: HYPERLAP_TOL={raw!r} is not a positive number", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return tol


def _dim_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if not 2 <= a <= b <= 12:
        raise argparse.ArgumentTypeError("dimensions must satisfy 2 <= A <= B <= 12")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperlap",
        description="Fundamental solution of the Laplacian on the hyperboloid H_R^d.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, radius=True):
        p.add_argument("--dim", type=int, required=True, help="dimension d in [2, 12]")
        if radius:
            p.add_argument("--radius", type=float, default=1.0, help="hyperboloid radius R")
        p.add_argument("--tol", type=float, default=None,
                       help="relative tolerance (default $HYPERLAP_TOL or 1e-10)")

    p_eval = sub.add_parser("eval", help="evaluate I_d(rho) and H_R^d at one distance")
    common(p_eval)
    p_eval.add_argument("--rho", type=float, required=True,
                        help="geodesic distance on the unit hyperboloid")
    p_eval.add_argument("--method", default="auto", choices=[r.value for r in EvalRoute])

    p_table = sub.add_parser("table", help="CSV of I_d by every route on a log grid")
    common(p_table)
    p_table.add_argument("--rho-min", type=float, default=0.05)
    p_table.add_argument("--rho-max", type=float, default=10.0)
    p_table.add_argument("--steps", type=int, default=40)
    p_table.add_argument("--out", default="-", help="output path ('-' for stdout)")

    p_verify = sub.add_parser("verify", help="run the verification checks")
    p_verify.add_argument("--dims", type=_dim_range, default=(2, 9), help="range A..B")
    p_verify.add_argument("--tol", type=float, default=1e-6,
                          help="tolerance for the harmonicity and flux checks")

    p_plot = sub.add_parser("plot", help="SVG of log10 I_d(rho) for every route")
    common(p_plot, radius=False)
    p_plot.add_argument("--out", required=True)
    return parser


def _validate(parser, args) -> None:
    if getattr(args, "dim", None) is not None and not 2 <= args.dim <= 12:
        parser.error("--dim must be in [2, 12]")
    if not 0 < getattr(args, "radius", 1.0) < math.inf:
        parser.error("--radius must be positive")
    if args.tol is not None and not args.tol > 0:
        parser.error("--tol must be positive")
    if args.command == "eval" and not (RHO_MIN <= args.rho < math.inf):
        parser.error(f"--rho must be finite and >= {RHO_MIN}")
    if args.command == "table":
        if not args.rho_min >= 10 * RHO_MIN:
            parser.error(f"--rho-min must be >= {10 * RHO_MIN}")
        if not args.rho_min < args.rho_max < math.inf:
            parser.error("--rho-max must exceed --rho-min")
        if args.steps < 2:
            parser.error("--steps must be >= 2")


def cmd_eval(args) -> int:
    tol = args.tol or _env_tol()
    try:
        res = evaluate_i(args.dim, args.rho, EvalRoute(args.method), tol)
    except (KernelError, ConvergenceError) as exc:
        print(f"hyperlap: {exc}", file=sys.stderr)
        return EXIT_ROUTE_ERROR
    scale = normalization_constant(args.dim) / args.radius ** (args.dim - 2)
    print(f"d = {args.dim}")
    print(f"R = {args.radius!r}")
    print(f"rho = {args.rho!r}")
    print(f"route = {res.route.value}")
    print(f"I_d = {res.value:.17g}")
    print(f"H = {res.value * scale:.17g}")
    print(f"est_error = {res.est_error:.17g}")
    if res.route is EvalRoute.LEGENDRE_Q:
        print(f"imag_residue = {res.imag_residue:.17g}")
    return 0


def render_table(d: int, rho_min: float, rho_max: float, steps: int, tol: float) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    for rho in log_grid(rho_min, rho_max, steps):
        writer.writerow(table_row(d, rho, tol).cells())
    return buf.getvalue()


def _emit(text: str, path: str) -> int:
    if path == "-":
        sys.stdout.write(text)
        return 0
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"hyperlap: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    return 0


def cmd_table(args) -> int:
    tol = args.tol or _env_tol()
    return _emit(render_table(args.dim, args.rho_min, args.rho_max, args.steps, tol), args.out)


def cmd_verify(args) -> int:
    lo, hi = args.dims
    print(REPORT_HEADER)
    failures = []
    for d in range(lo, hi + 1):
        for R in TABLE_RADII:
            for report in run_all(d, R, args.tol):
                line = report.to_line()
                print(line)
                if not report.passed:
                    failures.append(line)
    for line in failures:
        print(f"FAILED: {line}", file=sys.stderr)
    return 1 if failures else 0


def render_plot(d: int, tol: float, steps: int = 160) -> str:
    grid = log_grid(0.05, 10.0, steps)
    series = {}
    for route in ROUTES:
        pts = []
        for rho in grid:
            try:
                pts.append((rho, math.log10(evaluate_i(d, rho, route, tol).value)))
            except (KernelError, ConvergenceError):
                continue
        series[route.value] = pts
    return line_chart(series, title=f"I_{d}(rho) by evaluation route", xlabel="rho",
                      ylabel=f"log10 I_{d}(rho)")


def cmd_plot(args) -> int:
    return _emit(render_plot(args.dim, args.tol or _env_tol()), args.out)


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "verify": cmd_verify, "plot": cmd_plot}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
