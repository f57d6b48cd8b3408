"""Command-line front end.

Emits the condition-number table, the iteration-count table, sorted spectra,
and CG residual histories as CSV or markdown, to a file or stdout. Identical
flags give byte-identical output. Solve-backed commands stop at the relative
threshold ||r|| < tol * ||b||.

Exit codes: 0 success, 1 usage error, 2 non-convergence or solver breakdown,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys

from .experiments import (
    CONDITION_HEADERS,
    DEFAULT_SEED,
    DEFAULT_TOL,
    FORMATS,
    ITERATION_HEADERS,
    RESIDUAL_HEADERS,
    RHS_KINDS,
    SPECTRUM_HEADERS,
    TABLE1_SIZES,
    TABLE2_CASES,
    condition_cells,
    condition_row,
    figure_datasets,
    iteration_cells,
    render_table,
    residual_cells,
    run_solve,
    spectrum_cells,
    table1_rows,
    table2_rows,
    write_text,
)
from .grid import GridSpec
from .operators import OperatorKind
from .solver import PRECONDITION_KINDS, NumericalBreakdownError
from .spectrum import SpectrumCapError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_CONVERGENCE = 2
EXIT_RESOURCE = 3

_KINDS = {
    "laplacian": OperatorKind.LAPLACIAN,
    "mass": OperatorKind.MASS,
    "preconditioned": OperatorKind.PRECONDITIONED,
}

#: Cases at or above this many unknowns get a time note before solving.
_BIG_SOLVE = 1 << 20


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # raise instead of exiting so main() owns the exit-code contract
    def error(self, message):
        raise _UsageError(message)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be a positive real")
    return value


def _add_output_flags(p: argparse.ArgumentParser):
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=FORMATS, default="csv", help="table format (default: csv)")


def _add_solve_flags(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                   help="relative residual tolerance (default: 1e-8)")
    p.add_argument("--rhs", choices=RHS_KINDS, default="ones",
                   help="right-hand side (default: ones)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="seed for --rhs random (default: 42)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="masspcg",
                     description="Matrix-free Laplacian spectra and mass-preconditioned CG experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="sorted eigenvalues of one operator")
    p.add_argument("--dim", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--n", type=_positive_int, action="append", required=True,
                   help="grid size per axis")
    p.add_argument("--kind", choices=sorted(_KINDS), required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("condition", help="condition numbers and their ratio")
    p.add_argument("--dim", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--n", type=_positive_int, action="append", required=True,
                   help="grid size per axis (repeatable)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_condition)

    p = sub.add_parser("solve", help="CG solve, residual history as output")
    p.add_argument("--dim", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--n", type=_positive_int, action="append", required=True,
                   help="grid size per axis")
    p.add_argument("--precond", choices=PRECONDITION_KINDS, default="none")
    _add_solve_flags(p)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("table1", help="condition-number table, d in {1,2,3}")
    p.add_argument("--n", type=_positive_int, action="append",
                   help=f"grid sizes (default: {' '.join(map(str, TABLE1_SIZES))})")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_table1)

    p = sub.add_parser("table2", help="iteration-count table, 2D and 3D")
    p.add_argument("--dim", type=int, choices=(2, 3), default=None,
                   help="restrict to one dimension")
    p.add_argument("--n", type=_positive_int, action="append",
                   help="grid sizes (requires --dim)")
    _add_solve_flags(p)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_table2)

    p = sub.add_parser("figures", help="write all figure datasets to a directory")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=FORMATS, default="csv")
    _add_solve_flags(p)
    p.set_defaults(handler=_cmd_figures)

    return parser


def _single_n(values) -> int:
    if len(values) != 1:
        raise _UsageError("this command takes exactly one --n")
    return values[0]


def _note(message: str):
    print(message, file=sys.stderr)


def _cmd_spectrum(args) -> int:
    spec = GridSpec(args.dim, _single_n(args.n))
    cells = spectrum_cells(_KINDS[args.kind], spec)
    write_text(render_table(SPECTRUM_HEADERS, cells, args.format), args.out)
    return EXIT_OK


def _cmd_condition(args) -> int:
    rows = [condition_row(args.dim, n) for n in args.n]
    write_text(render_table(CONDITION_HEADERS, condition_cells(rows), args.format), args.out)
    return EXIT_OK


def _cmd_solve(args) -> int:
    spec = GridSpec(args.dim, _single_n(args.n))
    report = run_solve(spec, tol=args.tol, precondition=args.precond,
                       rhs=args.rhs, seed=args.seed)
    write_text(render_table(RESIDUAL_HEADERS, residual_cells(report), args.format), args.out)
    if report.converged:
        _note(f"converged in {report.iterations} iterations")
        return EXIT_OK
    _note(f"no convergence within {report.iterations} iterations")
    return EXIT_NO_CONVERGENCE


def _cmd_table1(args) -> int:
    sizes = tuple(args.n) if args.n else TABLE1_SIZES
    rows = table1_rows(sizes)
    write_text(render_table(CONDITION_HEADERS, condition_cells(rows), args.format), args.out)
    return EXIT_OK


def _table2_cases(args):
    if args.dim is not None and args.n:
        return [(args.dim, n) for n in args.n]
    if args.dim is not None:
        return [case for case in TABLE2_CASES if case[0] == args.dim]
    if args.n:
        raise _UsageError("--n requires --dim for table2")
    return list(TABLE2_CASES)


def _cmd_table2(args) -> int:
    cases = _table2_cases(args)
    for d, n in cases:
        if n**d >= _BIG_SOLVE:
            _note(f"note: d={d} n={n} solves {n**d} unknowns; "
                  "expect this cell to run for a minute or so")
    rows = table2_rows(cases, tol=args.tol, rhs=args.rhs, seed=args.seed, progress=_note)
    write_text(render_table(ITERATION_HEADERS, iteration_cells(rows), args.format), args.out)
    return EXIT_OK


def _cmd_figures(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    extension = "csv" if args.format == "csv" else "md"
    for name, headers, cells in figure_datasets(tol=args.tol, rhs=args.rhs,
                                                seed=args.seed, progress=_note):
        path = os.path.join(args.out, f"{name}.{extension}")
        write_text(render_table(headers, cells, args.format), path)
        _note(f"wrote {path}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help exits through argparse
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpectrumCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except NumericalBreakdownError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
