# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops. ``_fallback`` holds numpy twins with identical output."""

import numpy as np

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc


cdef extern from *:
    int __builtin_popcountll(unsigned long long x) nogil


def subsample_survivors(
    const uint64_t[:, ::1] colbits,
    const int64_t[::1] eligible,
    const double[:, ::1] uniforms,
    Py_ssize_t n_rows,
):
    """Surviving-row count for each replicate row of ``uniforms``.

    Replicate ``r`` picks ``uniforms.shape[1]`` distinct entries of
    ``eligible`` by a partial Fisher-Yates shuffle driven by ``uniforms[r]``,
    ORs their column bitmaps and counts the rows left with no missing bit.
    """
    cdef Py_ssize_t n_rep = uniforms.shape[0]
    cdef Py_ssize_t k = uniforms.shape[1]
    cdef Py_ssize_t m = eligible.shape[0]
    cdef Py_ssize_t n_words = colbits.shape[1]
    cdef Py_ssize_t r, i, j, w, tmp, col
    cdef int64_t missing
    out = np.empty(n_rep, dtype=np.int64)
    cdef int64_t[::1] out_v = out
    if n_rep == 0:
        return out
    if k > m:
        raise ValueError("k exceeds the number of eligible columns")

    cdef Py_ssize_t* perm = <Py_ssize_t*> malloc(m * sizeof(Py_ssize_t))
    cdef Py_ssize_t* swaps = <Py_ssize_t*> malloc((k + 1) * sizeof(Py_ssize_t))
    cdef uint64_t* acc = <uint64_t*> malloc((n_words + 1) * sizeof(uint64_t))
    if perm == NULL or swaps == NULL or acc == NULL:
        free(perm)
        free(swaps)
        free(acc)
        raise MemoryError()
    try:
        with nogil:
            for i in range(m):
                perm[i] = i
            for r in range(n_rep):
                for w in range(n_words):
                    acc[w] = 0
                for i in range(k):
                    j = i + <Py_ssize_t>(uniforms[r, i] * <double>(m - i))
                    if j >= m:
                        j = m - 1
                    swaps[i] = j
                    tmp = perm[i]
                    perm[i] = perm[j]
                    perm[j] = tmp
                    col = eligible[perm[i]]
                    for w in range(n_words):
                        acc[w] |= colbits[col, w]
                missing = 0
                for w in range(n_words):
                    missing += __builtin_popcountll(acc[w])
                out_v[r] = n_rows - missing
                # undo the swaps so perm is the identity again
                i = k - 1
                while i >= 0:
                    j = swaps[i]
                    tmp = perm[i]
                    perm[i] = perm[j]
                    perm[j] = tmp
                    i -= 1
    finally:
        free(perm)
        free(swaps)
        free(acc)
    return out


def any_nonzero_rows(const uint64_t[:, ::1] bits):
    """Boolean array, True where a row has at least one set bit."""
    cdef Py_ssize_t n = bits.shape[0]
    cdef Py_ssize_t n_words = bits.shape[1]
    cdef Py_ssize_t i, w
    cdef uint64_t acc
    out = np.zeros(n, dtype=np.bool_)
    cdef unsigned char[::1] out_v = out.view(np.uint8)
    with nogil:
        for i in range(n):
            acc = 0
            for w in range(n_words):
                acc |= bits[i, w]
            out_v[i] = acc != 0
    return out
