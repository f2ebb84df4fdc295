"""Command line front end: ``solve``, ``sweep`` and ``validate``."""
from __future__ import annotations

import argparse
import logging
import math
import sys

from .errors import ConvergenceError, WellError
from .oracle import GridConfig, finite_difference_levels
from .potential import load_well
from .spectrum import SolverConfig, find_bound_states
from .sweep import format_csv, load_sweep, run_sweep
from .validation import run_checks

EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3


def _solver_flags(p: argparse.ArgumentParser, defaults=SolverConfig()):
    p.add_argument("--emax", type=float, default=None,
                   help="upper end of the energy window (required for infinite walls)")
    p.add_argument("--emin-offset", type=float, default=defaults.edge_offset,
                   help="relative inset of the window from its ends")
    p.add_argument("--grid", type=int, default=defaults.grid_points,
                   help="number of scan points")
    p.add_argument("--tol-e", type=float, default=defaults.tol_e)
    p.add_argument("--tol-res", type=float, default=defaults.tol_res)
    p.add_argument("--max-iter", type=int, default=defaults.max_iter)


def _config(args) -> SolverConfig:
    return SolverConfig(grid_points=args.grid, tol_e=args.tol_e, tol_res=args.tol_res,
                        edge_offset=args.emin_offset, e_max=args.emax,
                        max_iter=args.max_iter)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boundwell", description="Bound states of one-dimensional quantum wells")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="print the bound-state energies of a well")
    solve.add_argument("well", help="well description (JSON)")
    solve.add_argument("--validate", action="store_true",
                       help="compare with the finite-difference oracle")
    _solver_flags(solve)

    sweep = sub.add_parser("sweep", help="tabulate levels over a parameter range as CSV")
    sweep.add_argument("sweep", help="sweep description (JSON)")
    sweep.add_argument("--out", default=None, help="write CSV here instead of stdout")
    _solver_flags(sweep)

    validate = sub.add_parser("validate", help="run the built-in consistency checks")
    validate.add_argument("--filter", default=None, help="only checks whose name contains this")
    validate.add_argument("--tol-res", type=float, default=SolverConfig().tol_res)
    return parser


def cmd_solve(args) -> int:
    spec = load_well(args.well)
    result = find_bound_states(spec, _config(args))
    for E in result.energies:
        print(f"{E:.12f}")
    if args.validate and result.energies:
        if spec.infinite:
            pad = 0.0
        else:
            pad = max(8.0 / math.sqrt(spec.top - result.energies[-1]), 1.0)
        fd = finite_difference_levels(
            spec, GridConfig(n=20000, n_levels=len(result.energies), pad=pad))
        print("# level  transfer_matrix  finite_difference  relative_deviation")
        for i, E in enumerate(result.energies):
            if i < len(fd):
                print(f"# {i + 1}  {E:.12f}  {fd[i]:.12f}  {(fd[i] - E) / E:.3e}")
            else:
                print(f"# {i + 1}  {E:.12f}  missing  nan")
    return 0


def cmd_sweep(args) -> int:
    sweep = load_sweep(args.sweep)
    text = format_csv(run_sweep(sweep, _config(args)), sweep.n_levels)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(args) -> int:
    results = run_checks(args.filter, SolverConfig(tol_res=args.tol_res))
    if not results:
        print(f"no check matches {args.filter!r}", file=sys.stderr)
        return EXIT_FAIL
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.detail}")
    return 0 if all(r.passed for r in results) else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    handler = {"solve": cmd_solve, "sweep": cmd_sweep, "validate": cmd_validate}[args.command]
    try:
        return handler(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (WellError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
