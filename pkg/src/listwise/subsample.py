"""Random variable subsampling followed by listwise deletion.

For each k, every replicate draws k distinct eligible columns uniformly at
random and counts the rows observed on all of them. Replicates are redrawn
independently for each k. Expectations and probabilities reported here are
over this subsampling randomness, not over any model of the data.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from listwise import rng
from listwise._backend import kernels
from listwise.errors import EnumerationRefused, InputError
from listwise.matrix import MissingnessMatrix

BLOCK_SIZE = 1024
ENUMERATION_LIMIT = 10**6
_STREAM_TAG = 0x7373


@dataclass(frozen=True)
class SubsampleConfig:
    k_values: tuple[int, ...]
    replicates: int = 25_000
    seed: int = 0
    eligible_cols: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "k_values", tuple(int(k) for k in self.k_values))
        if self.eligible_cols is not None:
            object.__setattr__(self, "eligible_cols", tuple(int(c) for c in self.eligible_cols))
        if not self.k_values:
            raise InputError("k_values must be non-empty")
        if self.replicates < 1:
            raise InputError("replicates must be >= 1")
        rng.check_seed(self.seed)

    def eligible(self, m: MissingnessMatrix) -> np.ndarray:
        if self.eligible_cols is None:
            cols = np.arange(m.n_cols, dtype=np.int64)
        else:
            cols = np.asarray(self.eligible_cols, dtype=np.int64)
            if cols.size == 0:
                raise InputError("eligible_cols must be non-empty")
            if len(set(cols.tolist())) != cols.size:
                raise InputError("eligible_cols contains duplicates")
            if cols.min() < 0 or cols.max() >= m.n_cols:
                raise InputError(f"eligible column index out of range [0, {m.n_cols})")
        bad = [k for k in self.k_values if not 1 <= k <= cols.size]
        if bad:
            raise InputError(f"k must lie in [1, {cols.size}] (eligible columns), got {bad}")
        return cols


@dataclass(frozen=True)
class SubsampleRecord:
    k: int
    mean_surviving_prop: float
    mean_surviving_prop_se: float
    prob_all_rows_lost: float
    prob_all_rows_lost_se: float
    replicates: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "mean_surviving_prop": self.mean_surviving_prop,
            "mean_surviving_prop_se": self.mean_surviving_prop_se,
            "prob_all_rows_lost": self.prob_all_rows_lost,
            "prob_all_rows_lost_se": self.prob_all_rows_lost_se,
            "replicates": self.replicates,
        }


@dataclass(frozen=True)
class SubsampleResult:
    records: tuple[SubsampleRecord, ...]
    n_rows: int
    seed: int

    def __getitem__(self, k: int) -> SubsampleRecord:
        for rec in self.records:
            if rec.k == k:
                return rec
        raise KeyError(k)

    def to_dict(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "seed": self.seed,
            "randomness": "variable subsampling",
            "records": [r.to_dict() for r in self.records],
        }


def survivor_counts(m: MissingnessMatrix, eligible: np.ndarray, k: int, replicates: int,
                    seed: int, workers: int = 1) -> np.ndarray:
    """Surviving-row count for each replicate at one value of k."""
    colbits = m.column_bits
    eligible = np.ascontiguousarray(eligible, dtype=np.int64)

    def run(block: int, start: int, count: int) -> np.ndarray:
        u = rng.block_generator(seed, (_STREAM_TAG, k), block).random((count, k))
        return kernels.subsample_survivors(colbits, eligible, u, m.n_rows)

    parts = rng.map_blocks(run, replicates, BLOCK_SIZE, workers)
    return np.concatenate(parts)


def summarize(k: int, survivors: np.ndarray, n_rows: int) -> SubsampleRecord:
    # integer sums keep the reduction exact and order independent
    r = int(survivors.size)
    total = int(survivors.sum(dtype=np.int64))
    total_sq = sum(int(s) * int(s) for s in survivors.tolist())
    lost = int(np.count_nonzero(survivors == 0))
    p = lost / r
    if r > 1:
        var = Fraction(r * total_sq - total * total, r * (r - 1) * n_rows * n_rows)
        mean_se = math.sqrt(var / r)
    else:
        mean_se = 0.0
    return SubsampleRecord(
        k=k,
        mean_surviving_prop=total / (r * n_rows),
        mean_surviving_prop_se=mean_se,
        prob_all_rows_lost=p,
        prob_all_rows_lost_se=math.sqrt(p * (1.0 - p) / r),
        replicates=r,
    )


def run_subsample(m: MissingnessMatrix, cfg: SubsampleConfig, workers: int = 1) -> SubsampleResult:
    eligible = cfg.eligible(m)
    records = []
    for k in cfg.k_values:
        counts = survivor_counts(m, eligible, k, cfg.replicates, cfg.seed, workers)
        records.append(summarize(k, counts, m.n_rows))
    return SubsampleResult(records=tuple(records), n_rows=m.n_rows, seed=cfg.seed)


@dataclass(frozen=True)
class ExactSubsample:
    k: int
    mean_surviving_prop: Fraction
    prob_all_rows_lost: Fraction
    n_subsets: int


def enumerate_exact(m: MissingnessMatrix, k: int, eligible_cols: Sequence[int] | None = None,
                    limit: int = ENUMERATION_LIMIT) -> ExactSubsample:
    """Exact subsampling statistics by visiting every k-subset of columns.

    Works on Python integers, one per column, independent of the packed
    kernels it is used to check. Raises :class:`EnumerationRefused` when the
    number of subsets exceeds ``limit``.
    """
    cols = list(range(m.n_cols)) if eligible_cols is None else [int(c) for c in eligible_cols]
    if not 1 <= k <= len(cols):
        raise InputError(f"k must lie in [1, {len(cols)}], got {k}")
    n_subsets = math.comb(len(cols), k)
    if n_subsets > limit:
        raise EnumerationRefused(f"C({len(cols)}, {k}) = {n_subsets} subsets exceeds the limit {limit}")
    grid = m.to_bool()
    col_ints = []
    for c in cols:
        col_ints.append(sum(1 << i for i in np.flatnonzero(grid[:, c]).tolist()))
    total_survivors = 0
    all_lost = 0
    for combo in itertools.combinations(col_ints, k):
        missing = 0
        for bits in combo:
            missing |= bits
        survivors = m.n_rows - missing.bit_count()
        total_survivors += survivors
        all_lost += survivors == 0
    return ExactSubsample(
        k=k,
        mean_surviving_prop=Fraction(total_survivors, n_subsets * m.n_rows),
        prob_all_rows_lost=Fraction(all_lost, n_subsets),
        n_subsets=n_subsets,
    )
