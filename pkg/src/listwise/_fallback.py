"""Numpy implementations of the compiled kernels, used when the extension is absent."""

from __future__ import annotations

import numpy as np

# cap on the (replicates, k, words) gather so memory stays bounded
_GATHER_LIMIT = 1 << 21


def subsample_survivors(
    colbits: np.ndarray,
    eligible: np.ndarray,
    uniforms: np.ndarray,
    n_rows: int,
) -> np.ndarray:
    n_rep, k = uniforms.shape
    m = eligible.shape[0]
    if k > m:
        raise ValueError("k exceeds the number of eligible columns")
    out = np.empty(n_rep, dtype=np.int64)
    if n_rep == 0:
        return out
    n_words = colbits.shape[1]
    chunk = max(1, _GATHER_LIMIT // max(1, k * n_words))
    offsets = np.arange(m - k + 1, m + 1)[::-1].astype(np.float64)  # m - i
    for start in range(0, n_rep, chunk):
        u = uniforms[start:start + chunk]
        rows = u.shape[0]
        perm = np.tile(np.arange(m, dtype=np.int64), (rows, 1))
        idx = np.arange(rows)
        for i in range(k):
            j = i + (u[:, i] * offsets[i]).astype(np.int64)
            np.minimum(j, m - 1, out=j)
            pi = perm[idx, i].copy()
            perm[idx, i] = perm[idx, j]
            perm[idx, j] = pi
        cols = eligible[perm[:, :k]]
        acc = np.bitwise_or.reduce(colbits[cols], axis=1)
        missing = np.bitwise_count(acc).sum(axis=1, dtype=np.int64)
        out[start:start + rows] = n_rows - missing
    return out


def any_nonzero_rows(bits: np.ndarray) -> np.ndarray:
    return bits.any(axis=1)
