"""Uniform Dirichlet grids on the unit interval/square/cube and vector helpers.

Unknowns live at the interior points of a uniform mesh with ``n`` points per
axis; the mesh width is ``h = 1/(n+1)``. Vectors are flat float64 arrays of
length ``n**d`` in lexicographic (axis-major, C-order) ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionMismatchError(ValueError):
    """A vector does not match the grid it is used with."""


@dataclass(frozen=True)
class GridSpec:
    """Identifies one operator instance: dimension ``d`` and interior points per axis ``n``."""

    d: int
    n: int

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2 or 3, got {self.d}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"interior point count must be a positive integer, got {self.n}")

    @property
    def h(self) -> float:
        """Mesh width on the unit domain, 1/(n+1)."""
        return 1.0 / (self.n + 1)

    @property
    def size(self) -> int:
        """Total number of unknowns, n**d."""
        return self.n**self.d

    @property
    def shape(self) -> tuple[int, ...]:
        """Shape of the d-dimensional view of a grid vector."""
        return (self.n,) * self.d


def check_vector(spec: GridSpec, u: np.ndarray, name: str = "u") -> np.ndarray:
    """Validate that ``u`` is a flat real vector of length ``spec.size``.

    Returns a float64 view/copy of ``u``. Raises DimensionMismatchError on a
    shape mismatch.
    """
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (spec.size,):
        raise DimensionMismatchError(
            f"{name} has shape {u.shape}, expected ({spec.size},) for d={spec.d}, n={spec.n}"
        )
    return u


def dot(u: np.ndarray, v: np.ndarray) -> float:
    """Euclidean inner product; vectors must have identical shape."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimensionMismatchError(f"dot: shapes {u.shape} and {v.shape} differ")
    return float(u @ v)


def norm2(u: np.ndarray) -> float:
    """Euclidean 2-norm, sqrt(dot(u, u))."""
    return float(np.linalg.norm(np.asarray(u, dtype=np.float64)))


def axpy(alpha: float, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Return alpha*u + v as a new vector."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimensionMismatchError(f"axpy: shapes {u.shape} and {v.shape} differ")
    return alpha * u + v
