"""Command line front end.

Verbs:
  point     observables at a single parameter point
  sweep     observables along a pump or emitter-decay grid, as CSV
  peak      locate the maximum of g2 versus pump
  accept    run the acceptance checks and report pass/fail
  dump-rho  solve the full density matrix and dump its entries

Unit conventions: --g sets the coupling in absolute rate units and is
the only dimensionful input; --gamma-a is given in units of g;
--gamma-sigma and --pump are given in units of gamma_a.  With
--universal the cavity decay drops out and pump and emitter decay are
pure numbers in units of gamma_a.

Exit codes: 0 success, 1 acceptance-check failure, 2 invalid request,
3 a solver did not converge within its resource limits.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .acceptance import SUITES, format_report, run_suite
from .analytics import SystemParams
from .errors import ConvergenceError
from .oracle import steady_state_auto, write_matrix_entries
from .photon_stats import find_g2_peak
from .sweep import (
    CSV_COLUMNS,
    SweepSpec,
    evaluate_point,
    render_csv,
    run_sweep,
    write_csv,
    write_sidecar,
)

_ENGINES = ("recurrence", "oracle", "both")


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("system parameters")
    group.add_argument("--g", type=float, default=1.0,
                       help="coupling rate, absolute units (default 1.0)")
    group.add_argument("--gamma-a", type=float, default=1e-2,
                       help="cavity decay in units of g (default 1e-2)")
    group.add_argument("--gamma-sigma", type=float, default=1.0,
                       help="emitter decay in units of gamma_a (default 1)")
    group.add_argument("--pump", type=float, default=1.0,
                       help="incoherent pump in units of gamma_a (default 1)")
    group.add_argument("--universal", action="store_true",
                       help="work on the universal curve (cavity decay "
                            "drops out)")
    group.add_argument("--nmax", type=int, default=None,
                       help="truncation override (top factorial moment or "
                            "starting Fock cutoff)")


def _params_from(args: argparse.Namespace) -> SystemParams:
    if args.g <= 0.0 or args.gamma_a <= 0.0:
        raise ValueError("--g and --gamma-a must be positive")
    if args.gamma_sigma < 0.0 or args.pump < 0.0:
        raise ValueError("--gamma-sigma and --pump must be nonnegative")
    return SystemParams.from_dimensionless(
        pump=args.pump,
        gamma_sigma=args.gamma_sigma,
        cavity_decay=args.gamma_a,
        g=args.g,
    )


def _print_rows(rows, fmt: str) -> None:
    if fmt == "csv":
        print(",".join(CSV_COLUMNS))
        for row in rows:
            print(",".join(_cell(getattr(row, col)) for col in CSV_COLUMNS))
        return
    for row in rows:
        print(f"[{row.engine}]")
        for col in CSV_COLUMNS:
            if col in ("engine", "swept_value"):
                continue
            print(f"  {col:10s} = {_cell(getattr(row, col))}")
        if row.note:
            print(f"  note       = {row.note}")


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def cmd_point(args: argparse.Namespace) -> int:
    params = _params_from(args)
    engines = ("recurrence", "oracle") if args.engine == "both" \
        else (args.engine,)
    if args.universal and "oracle" in engines:
        raise ValueError("the oracle engine requires finite parameters; "
                         "drop --universal or use --engine recurrence")
    rows = [
        evaluate_point(params, args.pump, engine,
                       universal_mode=args.universal, n_max=args.nmax)
        for engine in engines
    ]
    _print_rows(rows, args.format)
    if len(rows) == 2 and all(r.converged for r in rows):
        dev = abs(rows[0].n_a - rows[1].n_a) / max(abs(rows[1].n_a), 1e-300)
        print(f"# engines agree on n_a to {dev:.3e} relative")
    if not all(r.converged for r in rows):
        raise ConvergenceError("at least one engine failed to converge")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    params = _params_from(args)
    spec = SweepSpec(
        params=params,
        variable=args.variable.replace("-", "_"),
        grid_kind=args.grid,
        start=args.min,
        stop=args.max,
        count=args.count,
        engine=args.engine,
        universal_mode=args.universal,
        n_max=args.nmax,
        workers=args.workers,
    )
    result = run_sweep(spec)
    if args.out is None:
        sys.stdout.write(render_csv(result))
    else:
        write_csv(result, args.out)
    if args.sidecar is not None:
        write_sidecar(result, args.sidecar)
    failed = [row for row in result.rows if not row.converged]
    if failed:
        values = ", ".join(f"{row.swept_value:g}" for row in failed[:5])
        raise ConvergenceError(
            f"{len(failed)} grid points failed to converge (at {values})"
        )
    return 0


def cmd_peak(args: argparse.Namespace) -> int:
    params = _params_from(args)
    peak = find_g2_peak(
        params,
        universal_mode=args.universal,
        pump_range=(args.min, args.max),
        rel_tol=args.rel_tol,
    )
    if args.format == "csv":
        print("P_star,g2_max,bracket_lo,bracket_hi,converged")
        print(f"{peak.P_star!r},{peak.g2_max!r},{peak.bracket[0]!r},"
              f"{peak.bracket[1]!r},{_cell(peak.converged)}")
    else:
        print(f"P_star    = {peak.P_star!r}  (units of gamma_a)")
        print(f"g2_max    = {peak.g2_max!r}")
        print(f"bracket   = [{peak.bracket[0]!r}, {peak.bracket[1]!r}]")
        print(f"converged = {_cell(peak.converged)}")
    if not peak.converged:
        raise ConvergenceError("peak search did not isolate a maximum "
                               "inside the pump range")
    return 0


def cmd_accept(args: argparse.Namespace) -> int:
    results = run_suite(args.suite)
    print(format_report(results))
    return 0 if all(result.passed for _, result in results) else 1


def cmd_dump_rho(args: argparse.Namespace) -> int:
    params = _params_from(args)
    if args.universal:
        raise ValueError("dump-rho solves the full density matrix and "
                         "needs finite parameters; drop --universal")
    state = steady_state_auto(params, start=args.nmax)
    state.validate()
    header = [
        f"jclaser dump-rho (version {__version__})",
        f"g: {params.g!r}",
        f"gamma_a: {params.gamma_a!r}",
        f"gamma_sigma: {params.gamma_sigma!r}",
        f"pump: {params.pump!r}",
        f"n_max: {state.n_max}",
        f"residual: {state.residual!r}",
        "basis: index k = s*(n_max+1) + n, emitter s in {0 ground, "
        "1 excited}, photon number n",
        "columns: row col re im (nonzero entries only)",
    ]
    write_matrix_entries(state.entries, args.out, header=header)
    print(f"wrote {state.dim}x{state.dim} density matrix to {args.out} "
          f"(residual {state.residual:.3e})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jclaser",
        description="steady-state toolkit for the one-emitter "
                    "strong-coupling laser",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    point = sub.add_parser("point", help="observables at one point")
    _add_param_flags(point)
    point.add_argument("--engine", choices=_ENGINES, default="recurrence")
    point.add_argument("--format", choices=("table", "csv"),
                       default="table")
    point.set_defaults(func=cmd_point)

    sweep = sub.add_parser("sweep", help="observables along a grid")
    _add_param_flags(sweep)
    sweep.add_argument("--variable", choices=("pump", "gamma-sigma"),
                       default="pump",
                       help="which rate to sweep (units of gamma_a)")
    sweep.add_argument("--grid", choices=("log", "linear"), default="log")
    sweep.add_argument("--min", type=float, default=1e-3,
                       help="grid start (default 1e-3)")
    sweep.add_argument("--max", type=float, default=1e3,
                       help="grid stop (default 1e3)")
    sweep.add_argument("--count", type=int, default=25)
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--engine", choices=_ENGINES, default="recurrence")
    sweep.add_argument("--out", default=None,
                       help="CSV output path (default: stdout)")
    sweep.add_argument("--sidecar", default=None,
                       help="optional JSON metadata path")
    sweep.set_defaults(func=cmd_sweep)

    peak = sub.add_parser("peak", help="locate the g2 maximum")
    _add_param_flags(peak)
    peak.add_argument("--min", type=float, default=1e-2,
                      help="pump bracket start, units of gamma_a")
    peak.add_argument("--max", type=float, default=1e2,
                      help="pump bracket stop, units of gamma_a")
    peak.add_argument("--rel-tol", type=float, default=1e-6)
    peak.add_argument("--format", choices=("table", "csv"),
                      default="table")
    peak.set_defaults(func=cmd_peak)

    accept = sub.add_parser("accept", help="run acceptance checks")
    accept.add_argument("--suite",
                        choices=("all",) + tuple(sorted(SUITES)),
                        default="all")
    accept.set_defaults(func=cmd_accept)

    dump = sub.add_parser("dump-rho", help="dump the density matrix")
    _add_param_flags(dump)
    dump.add_argument("--out", required=True, help="output path")
    dump.set_defaults(func=cmd_dump_rho)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main_entry() -> None:
    sys.exit(main())
