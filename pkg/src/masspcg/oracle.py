"""Independent dense ground truth for tiny grids.

Re-derives the operators without the matrix-free sweeps: the Laplacian row by
row from the literal stencil over grid multi-indices, the mass operator as an
explicit Kronecker product of the 1D tridiagonal factor, the preconditioned
operator as the explicit dense product. Eigenvalues come from Rayleigh
quotients on the known tensor-product sine basis, with the eigenpair residual
reported so the check certifies the basis is exact, not just consistent.

Dense matrices are plain 2-D float64 arrays. Everything here is test support;
sizes are capped at 4096 rows.
"""

from __future__ import annotations

import itertools
from functools import reduce
from typing import NamedTuple

import numpy as np

from .grid import GridSpec
from .operators import OperatorKind

#: Largest dense system assembled (rows = n**d).
DENSE_SIZE_CAP = 4096


class RayleighEigenvalue(NamedTuple):
    index: tuple[int, ...]
    value: float
    residual: float


def _check_size(spec: GridSpec):
    if spec.size > DENSE_SIZE_CAP:
        raise ValueError(
            f"dense oracle capped at {DENSE_SIZE_CAP} rows, got n**d = {spec.size}"
        )


def _laplacian_dense(spec: GridSpec) -> np.ndarray:
    n, d, h = spec.n, spec.d, spec.h
    A = np.zeros((spec.size, spec.size))
    for row, idx in enumerate(itertools.product(range(n), repeat=d)):
        A[row, row] = 2.0 * d / h**2
        for axis in range(d):
            for step in (-1, 1):
                neighbor = list(idx)
                neighbor[axis] += step
                if 0 <= neighbor[axis] < n:
                    col = int(np.ravel_multi_index(neighbor, spec.shape))
                    A[row, col] = -1.0 / h**2
    return A


def _mass_dense(spec: GridSpec) -> np.ndarray:
    n, h = spec.n, spec.h
    factor = h / 6.0 * (4.0 * np.eye(n) + np.eye(n, k=1) + np.eye(n, k=-1))
    M = reduce(np.kron, [factor] * spec.d)
    return h ** (2 - spec.d) * M


def assemble_dense(kind: OperatorKind, spec: GridSpec) -> np.ndarray:
    """Dense matrix of the selected operator (n**d <= 4096)."""
    _check_size(spec)
    if kind is OperatorKind.LAPLACIAN:
        return _laplacian_dense(spec)
    if kind is OperatorKind.MASS:
        return _mass_dense(spec)
    return _mass_dense(spec) @ _laplacian_dense(spec)


def sine_vector(spec: GridSpec, k) -> np.ndarray:
    """Tensor-product sine vector with entries prod_j sin(pi*h*k_j*i_j), flat."""
    k = tuple(int(kj) for kj in k)
    if len(k) != spec.d:
        raise ValueError(f"index tuple {k} has length {len(k)}, expected d={spec.d}")
    i = np.arange(1, spec.n + 1)
    axes = [np.sin(np.pi * spec.h * kj * i) for kj in k]
    return reduce(np.multiply.outer, axes).reshape(-1)


def _sine_basis(spec: GridSpec) -> np.ndarray:
    """Matrix whose column ravel_multi_index(k-1) is the sine vector for k."""
    i = np.arange(1, spec.n + 1)
    S = np.sin(np.pi * spec.h * np.outer(i, i))
    return reduce(np.kron, [S] * spec.d)


def rayleigh_eigenvalues(kind: OperatorKind, spec: GridSpec) -> list[RayleighEigenvalue]:
    """Rayleigh quotients of the dense operator on every sine tensor vector.

    Returns one entry per frequency tuple (lexicographic order) with the
    eigenpair residual ||D v - lambda v|| / ||v||.
    """
    _check_size(spec)
    D = assemble_dense(kind, spec)
    V = _sine_basis(spec)
    DV = D @ V
    vv = np.einsum("ij,ij->j", V, V)
    vdv = np.einsum("ij,ij->j", V, DV)
    values = vdv / vv
    residuals = np.linalg.norm(DV - V * values, axis=0) / np.sqrt(vv)
    out = []
    for col, k in enumerate(itertools.product(range(1, spec.n + 1), repeat=spec.d)):
        out.append(RayleighEigenvalue(index=k, value=float(values[col]), residual=float(residuals[col])))
    return out
