"""
Reproduction tables and figure data
===================================

The experiments layer turns reports into deterministic CSV/markdown rows:
the condition-number table, the iteration-count table, sorted spectra, and
residual histories. The `masspcg` command line exposes the same functions;
this script drives them in-process on small grids so it runs in seconds.

For the full-size artifacts use the CLI:

    masspcg table1
    masspcg table2
    masspcg figures --out figures/
"""

from masspcg.experiments import (
    CONDITION_HEADERS,
    ITERATION_HEADERS,
    RESIDUAL_HEADERS,
    condition_cells,
    iteration_cells,
    iteration_row,
    render_table,
    residual_cells,
    run_solve,
    table1_rows,
)
from masspcg import GridSpec

# The condition-number table, rendered as markdown.
rows = table1_rows(sizes=(8, 16, 32))
print(render_table(CONDITION_HEADERS, condition_cells(rows), "markdown"))

# Two small iteration-count rows (the full table solves up to 2M unknowns).
iter_rows = [iteration_row(2, 32), iteration_row(3, 16)]
print(render_table(ITERATION_HEADERS, iteration_cells(iter_rows), "csv"))

# A residual history in the same CSV shape the figures command writes.
report = run_solve(GridSpec(2, 16), precondition="mass")
history = render_table(RESIDUAL_HEADERS, residual_cells(report), "csv")
print("\n".join(history.splitlines()[:5]))
print(f"... {report.iterations + 1} rows total, byte-identical on every run")
