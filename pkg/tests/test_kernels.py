import os

import numpy as np
import pytest

from listwise import BACKEND, MissingnessMatrix, _fallback

kernels = pytest.importorskip("listwise._kernels")


@pytest.mark.skipif(os.environ.get("LISTWISE_PURE") == "1", reason="fallback forced")
def test_backend_reports_compiled():
    assert BACKEND == "cython"


@pytest.mark.parametrize("n_rows,n_cols,k", [(1, 1, 1), (63, 5, 5), (64, 70, 3), (200, 130, 40), (129, 9, 1)])
def test_subsample_kernels_agree(n_rows, n_cols, k):
    rng = np.random.default_rng(n_rows * 1000 + n_cols)
    m = MissingnessMatrix.from_bool(rng.random((n_rows, n_cols)) < 0.2)
    eligible = np.sort(rng.choice(n_cols, size=max(k, n_cols // 2), replace=False)).astype(np.int64)
    u = rng.random((700, k))
    u[0] = np.nextafter(1.0, 0.0)  # top of the unit interval must still give a valid index
    a = kernels.subsample_survivors(m.column_bits, eligible, u, n_rows)
    b = _fallback.subsample_survivors(m.column_bits, eligible, u, n_rows)
    assert np.array_equal(a, b)
    assert a.min() >= 0 and a.max() <= n_rows


def test_subsample_kernel_against_direct_selection():
    rng = np.random.default_rng(3)
    grid = rng.random((50, 12)) < 0.3
    m = MissingnessMatrix.from_bool(grid)
    u = rng.random((100, 4))
    out = kernels.subsample_survivors(m.column_bits, np.arange(12, dtype=np.int64), u, 50)
    for r in range(100):
        perm = list(range(12))
        for i in range(4):
            j = min(i + int(u[r, i] * (12 - i)), 11)
            perm[i], perm[j] = perm[j], perm[i]
        assert out[r] == int((~grid[:, perm[:4]].any(axis=1)).sum())


def test_k_too_large():
    m = MissingnessMatrix.from_bool(np.zeros((2, 2), bool))
    for impl in (kernels, _fallback):
        with pytest.raises(ValueError):
            impl.subsample_survivors(m.column_bits, np.arange(2, dtype=np.int64), np.zeros((1, 3)), 2)


def test_row_kernels_agree():
    rng = np.random.default_rng(0)
    bits = MissingnessMatrix.from_bool(rng.random((300, 200)) < 0.003).bits
    assert np.array_equal(kernels.any_nonzero_rows(bits), _fallback.any_nonzero_rows(bits))


def test_empty_replicates():
    m = MissingnessMatrix.from_bool(np.zeros((2, 2), bool))
    out = kernels.subsample_survivors(m.column_bits, np.arange(2, dtype=np.int64), np.zeros((0, 1)), 2)
    assert out.shape == (0,)
