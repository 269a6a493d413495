"""Packed missingness matrix, listwise deletion and dataset-level statistics."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from listwise._backend import kernels
from listwise.errors import InputError

WORD_BITS = 64


def _words(n_bits: int) -> int:
    return (n_bits + WORD_BITS - 1) // WORD_BITS


def pack_rows(grid: np.ndarray) -> np.ndarray:
    """Pack a 2-D boolean array along axis 1 into little-endian uint64 words.

    Bit ``j % 64`` of word ``j // 64`` holds column ``j``; padding bits are zero.
    """
    n_rows, n_cols = grid.shape
    n_words = _words(n_cols)
    packed = np.packbits(grid.astype(bool, copy=False), axis=1, bitorder="little")
    buf = np.zeros((n_rows, n_words * 8), dtype=np.uint8)
    buf[:, : packed.shape[1]] = packed
    return buf.view("<u8").astype(np.uint64, copy=False).reshape(n_rows, n_words)


def unpack_rows(words: np.ndarray, n_bits: int) -> np.ndarray:
    as_bytes = np.ascontiguousarray(words).astype("<u8", copy=False).view(np.uint8)
    as_bytes = as_bytes.reshape(words.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, count=n_bits, bitorder="little").astype(bool)


class MissingnessMatrix:
    """Immutable n_rows x n_cols bit matrix; a set bit marks a missing cell.

    Rows are packed row-major into whole 64-bit words so a row is complete
    exactly when all of its words are zero. A column-major packing is built
    lazily for the column-subset queries used by subsampling and grouping.
    """

    def __init__(self, bits: np.ndarray, n_rows: int, n_cols: int,
                 col_names: Sequence[str] | None = None):
        if n_rows < 1 or n_cols < 1:
            raise InputError(f"matrix must have at least one row and column, got {n_rows}x{n_cols}")
        bits = np.ascontiguousarray(bits, dtype=np.uint64)
        if bits.shape != (n_rows, _words(n_cols)):
            raise InputError(f"packed bits have shape {bits.shape}, expected {(n_rows, _words(n_cols))}")
        tail = n_cols % WORD_BITS
        if tail and np.any(bits[:, -1] >> np.uint64(tail)):
            raise InputError("padding bits beyond the last column must be zero")
        if col_names is None:
            col_names = [f"V{j + 1}" for j in range(n_cols)]
        col_names = tuple(str(c) for c in col_names)
        if len(col_names) != n_cols:
            raise InputError(f"{len(col_names)} column names for {n_cols} columns")
        if len(set(col_names)) != n_cols:
            raise InputError("column names must be unique")
        bits.setflags(write=False)
        self._bits = bits
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        self.col_names = col_names

    @classmethod
    def from_bool(cls, grid, col_names: Sequence[str] | None = None) -> MissingnessMatrix:
        """Build from a boolean grid where True means missing."""
        grid = np.asarray(grid, dtype=bool)
        if grid.ndim != 2:
            raise InputError(f"expected a 2-D grid, got {grid.ndim} dimensions")
        n_rows, n_cols = grid.shape
        if n_rows < 1 or n_cols < 1:
            raise InputError(f"matrix must have at least one row and column, got {n_rows}x{n_cols}")
        return cls(pack_rows(grid), n_rows, n_cols, col_names)

    @classmethod
    def from_missing_cells(cls, n_rows: int, n_cols: int, cells,
                           col_names: Sequence[str] | None = None) -> MissingnessMatrix:
        grid = np.zeros((max(n_rows, 0), max(n_cols, 0)), dtype=bool)
        for i, j in cells:
            grid[i, j] = True
        return cls.from_bool(grid, col_names)

    @property
    def bits(self) -> np.ndarray:
        """Row-major packed words, shape ``(n_rows, ceil(n_cols / 64))``; read-only."""
        return self._bits

    @cached_property
    def column_bits(self) -> np.ndarray:
        """Column-major packed words, shape ``(n_cols, ceil(n_rows / 64))``; read-only."""
        cols = pack_rows(self.to_bool().T)
        cols.setflags(write=False)
        return cols

    def to_bool(self) -> np.ndarray:
        return unpack_rows(self._bits, self.n_cols)

    def is_missing(self, i: int, j: int) -> bool:
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError((i, j))
        word = int(self._bits[i, j // WORD_BITS])
        return bool((word >> (j % WORD_BITS)) & 1)

    def select_columns(self, cols: Sequence[int]) -> MissingnessMatrix:
        cols = _check_columns(self, cols)
        grid = self.to_bool()[:, cols]
        return MissingnessMatrix.from_bool(grid, [self.col_names[c] for c in cols])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MissingnessMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.col_names == other.col_names
                and np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash((self.shape, self.col_names, self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"MissingnessMatrix(n_rows={self.n_rows}, n_cols={self.n_cols})"


@dataclass(frozen=True)
class DatasetProfile:
    n_rows: int
    n_cols: int
    avg_missing_prop: float
    max_missing_prop: float
    n_fully_observed_cols: int
    n_complete_rows: int
    per_col_missing_prop: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "n_cols": self.n_cols,
            "avg_missing_prop": self.avg_missing_prop,
            "max_missing_prop": self.max_missing_prop,
            "n_fully_observed_cols": self.n_fully_observed_cols,
            "n_complete_rows": self.n_complete_rows,
            "per_col_missing_prop": list(self.per_col_missing_prop),
        }


def _check_columns(m: MissingnessMatrix, cols: Sequence[int]) -> list[int]:
    cols = [int(c) for c in cols]
    if not cols:
        raise InputError("column subset must be non-empty")
    if len(set(cols)) != len(cols):
        raise InputError(f"duplicate column indices in {cols}")
    bad = [c for c in cols if not 0 <= c < m.n_cols]
    if bad:
        raise InputError(f"column indices out of range [0, {m.n_cols}): {bad}")
    return cols


def complete_row_mask(m: MissingnessMatrix) -> np.ndarray:
    """Boolean vector, True where the row has no missing cell."""
    return ~kernels.any_nonzero_rows(m.bits)


def complete_row_mask_subset(m: MissingnessMatrix, cols: Sequence[int]) -> np.ndarray:
    """Boolean vector, True where the row is observed on every column in ``cols``."""
    cols = _check_columns(m, cols)
    selector = np.zeros(m.n_cols, dtype=bool)
    selector[cols] = True
    word_mask = pack_rows(selector[None, :])[0]
    return ~kernels.any_nonzero_rows(np.ascontiguousarray(m.bits & word_mask))


def column_missing_counts(m: MissingnessMatrix) -> np.ndarray:
    return np.bitwise_count(m.column_bits).sum(axis=1, dtype=np.int64)


def profile(m: MissingnessMatrix) -> DatasetProfile:
    """Summary statistics of the kind reported for a dataset's missingness."""
    counts = column_missing_counts(m)
    per_col = counts / m.n_rows
    return DatasetProfile(
        n_rows=m.n_rows,
        n_cols=m.n_cols,
        avg_missing_prop=float(counts.sum()) / (m.n_rows * m.n_cols),
        max_missing_prop=float(per_col.max()),
        n_fully_observed_cols=int(np.count_nonzero(counts == 0)),
        n_complete_rows=int(np.count_nonzero(complete_row_mask(m))),
        per_col_missing_prop=tuple(float(p) for p in per_col),
    )
