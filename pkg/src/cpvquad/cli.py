"""Command line front end: one-off integrals, the battery, the sweep.

Exit codes follow the usual convention: 0 for success, 1 when a result was
computed but failed its quality gate (requested tolerance not met, battery
bound violated, sweep ratio out of range), 2 for unusable flags.  A result
that fails its gate is still printed; a near-endpoint singularity, for
example, carries an honest error floor far above any requested tolerance,
and the caller decides what to do with it.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .benchmarks import run_benchmark, rows_pass, write_csv, write_json
from .cpv import CpvProblem, CpvResult, cpv_general, cpv_standard
from .error_model import EPS
from .expressions import ParseError, compile_expression
from .logbound import boundary_case, sweep, write_sweep_csv
from .quadrature import NonfiniteIntegrandError

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpvquad",
        description="Cauchy principal value integrals of f(x)/(x - tau).",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser(
        "integrate",
        help="compute one principal value integral",
        description=(
            "Compute the principal value of f(x)/(x - tau) over [a, b]. "
            "Exit status 1 means the printed error estimate exceeds the "
            "requested tolerance (the result is still printed)."
        ),
    )
    p_int.add_argument("--f", required=True, metavar="EXPR",
                       help="integrand, e.g. 'exp(-x^2)*sin(10*x)'")
    p_int.add_argument("--tau", required=True, type=float,
                       help="singularity location, strictly inside (a, b)")
    p_int.add_argument("--a", type=float, default=-1.0,
                       help="lower endpoint (default -1)")
    p_int.add_argument("--b", type=float, default=1.0,
                       help="upper endpoint (default 1)")
    p_int.add_argument("--tol", type=float, default=1e-12,
                       help="requested tolerance (default 1e-12)")
    p_int.add_argument("--method", choices=("open", "cutoff"), default="open",
                       help="treatment of the symmetric quotient near 0")
    p_int.add_argument("--mu", type=float, default=EPS,
                       help="cutoff radius for --method cutoff "
                            "(default: the rounding unit)")
    p_int.add_argument("--json", action="store_true",
                       help="print a JSON object instead of plain lines")

    p_bench = sub.add_parser(
        "bench",
        help="run the built-in benchmark battery",
        description=(
            "Run the built-in battery against its frozen references. "
            "Exit status 1 when any absolute-error bound is violated or an "
            "error estimate fails to cover the actual error."
        ),
    )
    p_bench.add_argument("--tol", type=float, default=1e-12,
                         help="tolerance for every case (default 1e-12)")
    target = p_bench.add_mutually_exclusive_group()
    target.add_argument("--csv", metavar="PATH", help="write rows as CSV")
    target.add_argument("--json", metavar="PATH", help="write rows as JSON")

    p_obs = sub.add_parser(
        "observation",
        help="sweep composite Gauss rules applied to 1/x",
        description=(
            "Empirical sweep of composite Gauss values of 1/x on [0, 1] "
            "against log(1/x00) over random partitions.  Exit status 1 when "
            "any cell with at least 2 points reaches ratio 2."
        ),
    )
    p_obs.add_argument("--m-min", type=int, default=2, help="smallest rule size")
    p_obs.add_argument("--m-max", type=int, default=30, help="largest rule size")
    p_obs.add_argument("--n-max", type=int, default=50,
                       help="largest subinterval count")
    p_obs.add_argument("--trials", type=int, default=200,
                       help="random partitions per cell")
    p_obs.add_argument("--seed", type=int, default=0, help="sweep seed")
    p_obs.add_argument("--csv", metavar="PATH", help="write all cells as CSV")
    return parser


def _print_result(result: CpvResult, as_json: bool) -> None:
    if as_json:
        budget = result.budget
        obj = {
            "value": result.value,
            "estimate": result.error_estimate,
            "budget": {
                "quad_left": budget.quad_left,
                "quad_right": budget.quad_right,
                "quad_h": budget.quad_h,
                "roundoff": budget.roundoff,
                "log_sensitivity": budget.log_sensitivity,
                "curvature_sensitivity": budget.curvature_sensitivity,
                "cutoff": budget.cutoff,
            },
            "evaluations": result.evaluations,
        }
        print(json.dumps(obj, indent=2))
    else:
        print(f"value = {result.value!r}")
        print(f"estimate = {result.error_estimate!r}")
        print(f"evaluations = {result.evaluations}")


def _cmd_integrate(args: argparse.Namespace) -> int:
    try:
        f = compile_expression(args.f)
    except ParseError as exc:
        print(f"error: invalid --f expression: {exc}", file=sys.stderr)
        return 2
    try:
        if (args.a, args.b) == (-1.0, 1.0):
            result = cpv_standard(CpvProblem(
                f=f, tau=args.tau, tol=args.tol,
                method=args.method, mu=args.mu,
            ))
        else:
            result = cpv_general(
                f, args.tau, args.a, args.b,
                tol=args.tol, method=args.method, mu=args.mu,
            )
    except ValueError as exc:
        # covers invalid problem setups (tau at an endpoint, bad mu, ...)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NonfiniteIntegrandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _print_result(result, args.json)
    if not result.converged or result.error_estimate > args.tol:
        return 1
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        rows = run_benchmark(tol=args.tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fp:
            write_csv(rows, fp)
        print(f"wrote {len(rows)} rows to {args.csv}")
    elif args.json:
        with open(args.json, "w", encoding="utf-8") as fp:
            write_json(rows, fp)
        print(f"wrote {len(rows)} rows to {args.json}")
    else:
        header = (f"{'name':7s} {'tau':>10s} {'value':>24s} {'abs_error':>12s} "
                  f"{'estimate':>12s} {'evals':>7s} {'seconds':>9s}")
        print(header)
        for row in rows:
            print(f"{row.name:7s} {row.tau!r:>10s} {row.value!r:>24s} "
                  f"{row.abs_error:>12.3e} {row.error_estimate:>12.3e} "
                  f"{row.evaluations:>7d} {row.elapsed_seconds:>9.4f}")
    failed = [row.name for row in rows if not row.passed]
    if failed:
        print(f"bounds violated: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def _cmd_observation(args: argparse.Namespace) -> int:
    try:
        report = sweep(
            range(args.m_min, args.m_max + 1),
            range(1, args.n_max + 1),
            args.trials,
            args.seed,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fp:
            write_sweep_csv(report, fp)
        print(f"wrote {len(report.cells)} cells to {args.csv}")
    print(f"cells: {len(report.cells)}  trials per cell: {report.trials_per_cell}")
    checked = [cell for cell in report.cells if cell.m >= 2]
    if args.m_min <= 1:
        b = boundary_case()
        print(f"1-point boundary case reported, not checked: "
              f"ratio {b.ratio!r}")
    if not checked:
        print("no cells with at least 2 points; nothing to check")
        return 0
    worst = max(checked, key=lambda cell: cell.max_ratio)
    print(f"max ratio: {worst.max_ratio!r} "
          f"(m={worst.m}, n={worst.n}, scheme={worst.witness_scheme}, "
          f"seed={worst.witness_seed})")
    large = [cell.max_ratio for cell in checked if cell.m >= 15]
    if large:
        print(f"max ratio for rules with >= 15 points: {max(large)!r}")
    if worst.max_ratio >= 2.0:
        print("ratio bound 2 violated", file=sys.stderr)
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "integrate":
        return _cmd_integrate(args)
    if args.command == "bench":
        return _cmd_bench(args)
    return _cmd_observation(args)


if __name__ == "__main__":
    sys.exit(main())
