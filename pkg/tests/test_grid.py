import numpy as np
import pytest

from masspcg import DimensionMismatchError, GridSpec, axpy, dot, norm2
from masspcg.grid import check_vector


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 7, 33])
def test_spec_derived_quantities(d, n):
    spec = GridSpec(d, n)
    assert spec.h == 1.0 / (n + 1)
    assert spec.size == n**d
    assert spec.shape == (n,) * d


@pytest.mark.parametrize("d", [0, 4, -1])
def test_bad_dimension_rejected(d):
    with pytest.raises(ValueError):
        GridSpec(d, 4)


@pytest.mark.parametrize("n", [0, -3])
def test_bad_size_rejected(n):
    with pytest.raises(ValueError):
        GridSpec(2, n)


def test_spec_is_immutable():
    spec = GridSpec(2, 4)
    with pytest.raises(Exception):
        spec.n = 8


def test_check_vector_accepts_flat_and_casts():
    spec = GridSpec(2, 3)
    u = check_vector(spec, np.arange(9, dtype=np.int64))
    assert u.dtype == np.float64
    np.testing.assert_array_equal(u, np.arange(9.0))


def test_check_vector_rejects_wrong_length():
    spec = GridSpec(2, 3)
    with pytest.raises(DimensionMismatchError):
        check_vector(spec, np.zeros(8))


def test_check_vector_rejects_wrong_shape():
    spec = GridSpec(2, 3)
    with pytest.raises(DimensionMismatchError):
        check_vector(spec, np.zeros((3, 3)))


def test_dot_norm_axpy_agree_with_numpy():
    rng = np.random.default_rng(7)
    u = rng.standard_normal(50)
    v = rng.standard_normal(50)
    assert dot(u, v) == pytest.approx(float(u @ v), rel=1e-15)
    assert norm2(u) == pytest.approx(float(np.linalg.norm(u)), rel=1e-15)
    np.testing.assert_allclose(axpy(2.5, u, v), 2.5 * u + v, rtol=1e-15)


def test_dot_rejects_mismatched_lengths():
    with pytest.raises(DimensionMismatchError):
        dot(np.zeros(3), np.zeros(4))
