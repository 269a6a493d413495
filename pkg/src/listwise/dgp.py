"""Synthetic missingness with independent rows and bounded conditional observation.

Mechanisms are parameterised by the probability that a cell is *observed*.
Under :class:`Sequential`, cell ``(i, j)`` is observed with probability
``q[i, j]`` given that cells ``0..j-1`` of row ``i`` are observed; once a row
has a missing cell its later cells keep the same per-cell law. That
completion is admissible because only the all-observed prefix is constrained,
and it makes the cells independent Bernoulli draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from listwise import rng
from listwise.errors import InputError
from listwise.matrix import MissingnessMatrix

# per-block cell budget; block size depends only on (n, k)
_BLOCK_CELLS = 1 << 22
_MAX_BLOCK = 4096
_STREAM_TAG = 0x6467


@dataclass(frozen=True)
class Iid:
    """Every cell observed independently with probability ``q``."""

    q: float

    def __post_init__(self):
        if not 0.0 <= float(self.q) < 1.0:
            raise InputError(f"iid observation probability must lie in [0, 1), got {self.q!r}")


@dataclass(frozen=True, eq=False)
class Sequential:
    """Conditional observation probabilities ``q[i, j] <= q_star``.

    ``q`` is a length-k vector shared by all rows or an ``(n, k)`` array.
    """

    q: np.ndarray
    q_star: float

    def __post_init__(self):
        q = np.array(self.q, dtype=np.float64)
        if q.ndim not in (1, 2):
            raise InputError("sequential q must be a vector or a matrix")
        if not 0.0 <= float(self.q_star) < 1.0:
            raise InputError(f"q_star must lie in [0, 1), got {self.q_star!r}")
        if not np.all(np.isfinite(q)) or q.min(initial=0.0) < 0.0 or q.max(initial=0.0) > self.q_star:
            raise InputError("every conditional observation probability must lie in [0, q_star]")
        q.setflags(write=False)
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class DgpSpec:
    n: int
    k: int
    mechanism: Iid | Sequential
    seed: int = 0
    _obs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise InputError(f"n and k must be >= 1, got n={self.n}, k={self.k}")
        rng.check_seed(self.seed)
        mech = self.mechanism
        if isinstance(mech, Iid):
            obs = np.full((1, self.k), float(mech.q))
        elif isinstance(mech, Sequential):
            obs = mech.q.reshape(1, -1) if mech.q.ndim == 1 else mech.q
            if obs.shape[1] != self.k or obs.shape[0] not in (1, self.n):
                raise InputError(f"sequential q has shape {mech.q.shape}, incompatible with n={self.n}, k={self.k}")
        else:
            raise InputError(f"unknown mechanism {mech!r}")
        object.__setattr__(self, "_obs", obs)

    @property
    def observation_probs(self) -> np.ndarray:
        """Broadcastable ``(1 or n, k)`` array of per-cell observation probabilities."""
        return self._obs

    @property
    def block_size(self) -> int:
        return max(1, min(_MAX_BLOCK, _BLOCK_CELLS // (self.n * self.k)))

    def exact_p_all(self) -> float:
        """P(no row fully observed) = prod_i (1 - prod_j q_ij) when cells are independent."""
        row_complete = np.prod(self._obs, axis=1)
        log_lost = float(np.log1p(-row_complete).sum())
        if self._obs.shape[0] == 1:
            log_lost *= self.n
        return math.exp(log_lost)


@dataclass(frozen=True)
class PAllEstimate:
    estimate: float
    replicates: int
    std_error: float
    n_all_lost: int


def _missing_block(spec: DgpSpec, block: int, count: int) -> np.ndarray:
    gen = rng.block_generator(spec.seed, (_STREAM_TAG,), block)
    u = gen.random((count, spec.n, spec.k))
    return u >= spec.observation_probs


def generate(spec: DgpSpec, replicate: int = 0) -> MissingnessMatrix:
    """One synthetic matrix; ``replicate`` selects the same draw that
    :func:`estimate_p_all` uses for that replicate index."""
    if replicate < 0:
        raise InputError("replicate index must be non-negative")
    bs = spec.block_size
    block, slot = divmod(replicate, bs)
    grid = _missing_block(spec, block, slot + 1)[slot]
    return MissingnessMatrix.from_bool(grid)


def estimate_p_all(spec: DgpSpec, replicates: int, workers: int = 1) -> PAllEstimate:
    """Monte Carlo share of generated matrices in which no row is complete."""
    if replicates < 1:
        raise InputError("replicates must be >= 1")

    def run(block: int, start: int, count: int) -> int:
        missing = _missing_block(spec, block, count)
        any_complete = (~missing.any(axis=2)).any(axis=1)
        return int(np.count_nonzero(~any_complete))

    lost = sum(rng.map_blocks(run, replicates, spec.block_size, workers))
    p = lost / replicates
    return PAllEstimate(
        estimate=p,
        replicates=replicates,
        std_error=math.sqrt(p * (1.0 - p) / replicates),
        n_all_lost=lost,
    )
