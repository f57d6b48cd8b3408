"""Matrix-free Dirichlet Laplacian, scaled mass operator, closed-form
spectra, and conjugate gradients with multiply-only mass preconditioning."""

from .grid import DimensionMismatchError, GridSpec, axpy, dot, norm2
from .operators import (
    OperatorKind,
    apply_laplacian,
    apply_mass,
    apply_operator,
    apply_preconditioned,
)
from .solver import (
    ComparisonReport,
    NumericalBreakdownError,
    SolveConfig,
    SolveReport,
    cg_solve,
    predicted_vs_observed,
)
from .spectrum import (
    ASYMPTOTIC_RATIO_LIMIT,
    ClosedFormCheck,
    RatioReport,
    SpectrumCapError,
    SpectrumReport,
    closed_form_preconditioned_kappa,
    eigenvalue,
    full_spectrum,
    ratio_report,
    spectrum_report,
)

__version__ = "0.1.0"

__all__ = [
    "ASYMPTOTIC_RATIO_LIMIT",
    "ClosedFormCheck",
    "ComparisonReport",
    "DimensionMismatchError",
    "GridSpec",
    "NumericalBreakdownError",
    "OperatorKind",
    "RatioReport",
    "SolveConfig",
    "SolveReport",
    "SpectrumCapError",
    "SpectrumReport",
    "apply_laplacian",
    "apply_mass",
    "apply_operator",
    "apply_preconditioned",
    "axpy",
    "cg_solve",
    "closed_form_preconditioned_kappa",
    "dot",
    "eigenvalue",
    "full_spectrum",
    "norm2",
    "predicted_vs_observed",
    "ratio_report",
    "spectrum_report",
    "__version__",
]
