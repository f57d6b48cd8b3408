"""Reproduction experiments and deterministic table rendering.

Builds the condition-number table, the iteration-count table, and the figure
datasets (sorted spectra, residual histories) as rows of pre-formatted
strings, so CSV and markdown output is byte-identical across runs.

Iteration counts use the relative stopping rule ||r_i|| < tol * ||b||, the
convention the reference iteration counts were produced with. The solver
itself takes an absolute threshold; this layer converts.

The random right-hand side comes from a counter-based SplitMix64 stream so a
seed yields the same vector on any platform; the recipe is documented at
:func:`rhs_random` for reproduction outside this package.
"""

from __future__ import annotations

import dataclasses
import math
import sys

import numpy as np

from .grid import GridSpec, norm2
from .operators import OperatorKind
from .solver import SolveConfig, SolveReport, cg_solve
from .spectrum import (
    ASYMPTOTIC_RATIO_LIMIT,
    DEFAULT_SPECTRUM_CAP,
    full_spectrum,
    ratio_report,
)

DEFAULT_TOL = 1e-8
DEFAULT_SEED = 42
RHS_KINDS = ("ones", "random")
FORMATS = ("csv", "markdown")

#: Grid sizes of the condition-number table, crossed with d in {1, 2, 3}.
TABLE1_SIZES = (8, 16, 32)
#: (d, n) cases of the iteration-count table.
TABLE2_CASES = ((2, 32), (2, 64), (2, 128), (2, 256), (3, 32), (3, 64), (3, 96), (3, 128))
#: (d, n) cases whose full spectra make up the spectrum figure.
FIGURE_SPECTRUM_CASES = ((2, 32),)
#: (d, n) cases whose residual histories make up the convergence figures.
FIGURE_RESIDUAL_CASES = ((2, 128), (2, 256), (3, 64), (3, 128))


def rhs_ones(spec: GridSpec) -> np.ndarray:
    return np.ones(spec.size)


def rhs_random(spec: GridSpec, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Seeded uniform [0, 1) right-hand side, reproducible across platforms.

    Entry i (0-based) is produced by the SplitMix64 mix of the 64-bit counter
    seed + (i+1) * 0x9E3779B97F4A7C15, taking the top 53 bits as the mantissa:

        z = (seed + (i+1) * 0x9E3779B97F4A7C15) mod 2**64
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
        z = z ^ (z >> 31)
        u_i = (z >> 11) * 2.0**-53
    """
    i = np.arange(1, spec.size + 1, dtype=np.uint64)
    z = np.uint64(seed % 2**64) + i * np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def make_rhs(spec: GridSpec, kind: str = "ones", seed: int = DEFAULT_SEED) -> np.ndarray:
    if kind not in RHS_KINDS:
        raise ValueError(f"rhs kind must be one of {RHS_KINDS}, got {kind!r}")
    if kind == "ones":
        return rhs_ones(spec)
    return rhs_random(spec, seed)


def run_solve(
    spec: GridSpec,
    *,
    tol: float = DEFAULT_TOL,
    precondition: str = "none",
    rhs: str = "ones",
    seed: int = DEFAULT_SEED,
    max_iter: int | None = None,
    record_history: bool = True,
) -> SolveReport:
    """CG solve with the relative stopping rule ||r_i|| < tol * ||b||."""
    b = make_rhs(spec, rhs, seed)
    config = SolveConfig(
        tol=tol * norm2(b),
        max_iter=max_iter,
        precondition=precondition,
        record_history=record_history,
    )
    return cg_solve(spec, b, config=config)


@dataclasses.dataclass(frozen=True)
class ConditionRow:
    """One condition-number table row: kappa of the plain operator, kappa_p
    of the mass-preconditioned one, their ratio, and its square root (the
    predicted iteration-count ratio)."""

    d: int
    n: int
    kappa: float
    kappa_p: float
    ratio: float
    sqrt_ratio: float


def condition_row(d: int, n: int) -> ConditionRow:
    report = ratio_report(GridSpec(d, n))
    return ConditionRow(d, n, report.kappa, report.kappa_p, report.r, report.predicted_iter_ratio)


def table1_rows(sizes=TABLE1_SIZES) -> list[ConditionRow]:
    return [condition_row(d, n) for d in (1, 2, 3) for n in sizes]


@dataclasses.dataclass(frozen=True)
class IterationRow:
    """One iteration-count table row: plain and mass-preconditioned CG counts
    for the same system, the observed ratio, the per-size predicted ratio
    sqrt(kappa / kappa_p), and its large-n limit."""

    d: int
    n: int
    unknowns: int
    iterations: int
    iterations_mass: int
    observed_ratio: float
    predicted_ratio: float
    limit_ratio: float
    converged: bool
    converged_mass: bool


def iteration_row(
    d: int,
    n: int,
    *,
    tol: float = DEFAULT_TOL,
    rhs: str = "ones",
    seed: int = DEFAULT_SEED,
) -> IterationRow:
    spec = GridSpec(d, n)
    plain = run_solve(spec, tol=tol, precondition="none", rhs=rhs, seed=seed, record_history=False)
    mass = run_solve(spec, tol=tol, precondition="mass", rhs=rhs, seed=seed, record_history=False)
    report = ratio_report(spec)
    observed = plain.iterations / mass.iterations if mass.iterations else math.nan
    return IterationRow(
        d=d,
        n=n,
        unknowns=spec.size,
        iterations=plain.iterations,
        iterations_mass=mass.iterations,
        observed_ratio=observed,
        predicted_ratio=report.predicted_iter_ratio,
        limit_ratio=math.sqrt(ASYMPTOTIC_RATIO_LIMIT[d]),
        converged=plain.converged,
        converged_mass=mass.converged,
    )


def table2_rows(
    cases=TABLE2_CASES,
    *,
    tol: float = DEFAULT_TOL,
    rhs: str = "ones",
    seed: int = DEFAULT_SEED,
    progress=None,
) -> list[IterationRow]:
    rows = []
    for d, n in cases:
        if progress is not None:
            progress(f"solving d={d} n={n} ({n**d} unknowns)")
        rows.append(iteration_row(d, n, tol=tol, rhs=rhs, seed=seed))
    return rows


def _fmt_value(x: float) -> str:
    # repr of a float round-trips exactly, so data files are bit-faithful
    return repr(float(x))


def _fmt_fixed(x: float, places: int = 4) -> str:
    return f"{x:.{places}f}"


SPECTRUM_HEADERS = ("index", "eigenvalue")
RESIDUAL_HEADERS = ("iter", "residual_norm")
CONDITION_HEADERS = ("d", "n", "kappa", "kappa_p", "ratio", "sqrt_ratio")
ITERATION_HEADERS = ("d", "n", "mtx-size", "itn-unprec", "itn-prec", "th-itn-ratio", "itn-ratio")


def spectrum_cells(kind: OperatorKind, spec: GridSpec, cap: int = DEFAULT_SPECTRUM_CAP) -> list[tuple[str, str]]:
    """(index, eigenvalue) string rows of the sorted spectrum, 1-based rank."""
    values = full_spectrum(kind, spec, cap=cap)
    return [(str(rank), _fmt_value(v)) for rank, v in enumerate(values, start=1)]


def residual_cells(report: SolveReport) -> list[tuple[str, str]]:
    """(iter, residual_norm) string rows from a recorded solve history."""
    if report.residual_history is None:
        raise ValueError("solve was run without record_history")
    return [(str(i), _fmt_value(v)) for i, v in enumerate(report.residual_history)]


def condition_cells(rows: list[ConditionRow]) -> list[tuple[str, ...]]:
    return [
        (
            str(r.d),
            str(r.n),
            _fmt_fixed(r.kappa),
            _fmt_fixed(r.kappa_p),
            _fmt_fixed(r.ratio),
            _fmt_fixed(r.sqrt_ratio),
        )
        for r in rows
    ]


def iteration_cells(rows: list[IterationRow]) -> list[tuple[str, ...]]:
    # th-itn-ratio is the dimension's limiting ratio, the value the per-size
    # prediction sqrt(kappa/kappa_p) approaches from below
    return [
        (
            str(r.d),
            str(r.n),
            str(r.unknowns),
            str(r.iterations),
            str(r.iterations_mass),
            _fmt_fixed(r.limit_ratio, 2),
            _fmt_fixed(r.observed_ratio, 2),
        )
        for r in rows
    ]


def render_table(headers, cells, fmt: str = "csv") -> str:
    """Render pre-formatted string rows as CSV (UTF-8, LF) or a markdown table."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    if fmt == "csv":
        lines = [",".join(headers)]
        lines += [",".join(row) for row in cells]
    else:
        lines = ["| " + " | ".join(headers) + " |"]
        lines.append("| " + " | ".join("---" for _ in headers) + " |")
        lines += ["| " + " | ".join(row) + " |" for row in cells]
    return "\n".join(lines) + "\n"


def write_text(text: str, path: str | None):
    """Write to path (UTF-8, LF) or stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def figure_datasets(
    *,
    tol: float = DEFAULT_TOL,
    rhs: str = "ones",
    seed: int = DEFAULT_SEED,
    progress=None,
):
    """Yield (basename, headers, cells) for every figure dataset.

    Spectrum files carry the sorted eigenvalues of the plain and the
    mass-preconditioned operator on the same grid; residual files carry one
    convergence history per preconditioning variant.
    """
    for d, n in FIGURE_SPECTRUM_CASES:
        spec = GridSpec(d, n)
        for kind, tag in (
            (OperatorKind.LAPLACIAN, "laplacian"),
            (OperatorKind.PRECONDITIONED, "preconditioned"),
        ):
            if progress is not None:
                progress(f"spectrum {tag} d={d} n={n}")
            yield (
                f"spectrum_{tag}_{d}d_n{n}",
                SPECTRUM_HEADERS,
                spectrum_cells(kind, spec),
            )
    for d, n in FIGURE_RESIDUAL_CASES:
        spec = GridSpec(d, n)
        for precondition in ("none", "mass"):
            if progress is not None:
                progress(f"residual history d={d} n={n} precond={precondition}")
            report = run_solve(spec, tol=tol, precondition=precondition, rhs=rhs, seed=seed)
            yield (
                f"residuals_{d}d_n{n}_{precondition}",
                RESIDUAL_HEADERS,
                residual_cells(report),
            )
