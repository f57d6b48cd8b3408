"""Matrix-free application of the Dirichlet Laplacian, the scaled mass operator,
and their product.

All three operators act on flat vectors of length ``n**d`` and never assemble a
matrix. Off-grid neighbors contribute zero (homogeneous Dirichlet closure), so
each operator is tridiagonal-Toeplitz along every axis and the tensor-product
sine vectors are exact shared eigenvectors.

Scaling conventions on the unit domain with ``h = 1/(n+1)``:

* Laplacian: per-axis stencil ``(-1, 2, -1) / h**2``, summed over axes.
* Mass: per-axis sweep with weights ``(h/6) * (1, 4, 1)``, composed over axes,
  times a dimensional scale of ``h`` in 1D, ``1`` in 2D and ``1/h`` in 3D
  (i.e. ``h**(2-d)`` overall).
* Preconditioned: mass applied after the Laplacian.
"""

from __future__ import annotations

import enum

import numpy as np

from .grid import GridSpec, check_vector


class OperatorKind(enum.Enum):
    """Which grid operator an operation refers to."""

    LAPLACIAN = "laplacian"
    MASS = "mass"
    PRECONDITIONED = "preconditioned"


def _axis_slices(ndim: int, axis: int) -> tuple[tuple[slice, ...], tuple[slice, ...]]:
    """Slice pairs (lo, hi) selecting all-but-last / all-but-first along ``axis``."""
    lo = [slice(None)] * ndim
    hi = [slice(None)] * ndim
    lo[axis] = slice(0, -1)
    hi[axis] = slice(1, None)
    return tuple(lo), tuple(hi)


def apply_laplacian(spec: GridSpec, u: np.ndarray) -> np.ndarray:
    """Apply the d-dimensional finite-difference Laplacian with Dirichlet closure.

    Parameters
    ----------
    spec : GridSpec
        Grid the vector lives on.
    u : ndarray
        Flat vector of length ``spec.size`` in lexicographic ordering.

    Returns
    -------
    ndarray
        ``A_d @ u`` as a new flat vector.
    """
    u = check_vector(spec, u)
    v = u.reshape(spec.shape)
    out = (2.0 * spec.d) * v
    for axis in range(spec.d):
        lo, hi = _axis_slices(spec.d, axis)
        out[lo] -= v[hi]
        out[hi] -= v[lo]
    out /= spec.h**2
    return out.reshape(-1)


def apply_mass(spec: GridSpec, u: np.ndarray) -> np.ndarray:
    """Apply the scaled finite-element mass operator with Dirichlet closure.

    Implemented as d successive 1D tridiagonal sweeps with weights
    ``(h/6)*(1, 4, 1)``, one along each axis, times the dimensional scale
    ``h**(2-d)``.
    """
    u = check_vector(spec, u)
    h = spec.h
    v = u.reshape(spec.shape)
    for axis in range(spec.d):
        w = 4.0 * v
        lo, hi = _axis_slices(spec.d, axis)
        w[lo] += v[hi]
        w[hi] += v[lo]
        w *= h / 6.0
        v = w
    v *= h ** (2 - spec.d)
    return v.reshape(-1)


def apply_preconditioned(spec: GridSpec, u: np.ndarray) -> np.ndarray:
    """Apply the mass-preconditioned Laplacian, mass(laplacian(u))."""
    return apply_mass(spec, apply_laplacian(spec, u))


_APPLY = {
    OperatorKind.LAPLACIAN: apply_laplacian,
    OperatorKind.MASS: apply_mass,
    OperatorKind.PRECONDITIONED: apply_preconditioned,
}


def apply_operator(kind: OperatorKind, spec: GridSpec, u: np.ndarray) -> np.ndarray:
    """Apply the operator selected by ``kind``."""
    return _APPLY[kind](spec, u)
