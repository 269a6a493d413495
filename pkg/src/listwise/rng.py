"""Scheduling-independent random streams for Monte Carlo replicates.

Replicates are grouped into fixed-size blocks. Block ``b`` of a stream tagged
``tag`` draws from ``PCG64(SeedSequence(seed, spawn_key=(*tag, b)))`` and
replicate ``r`` reads row ``r % block_size`` of that block's draws. Because a
generator fills arrays in order, a partial final block is a prefix of the full
one, so every replicate's randomness is a function of ``(seed, tag, r)`` only,
whatever the worker count or evaluation order.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

T = TypeVar("T")

SEED_MASK = (1 << 64) - 1


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= SEED_MASK:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def block_generator(seed: int, tag: Sequence[int], block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=(*tag, block))
    return np.random.Generator(np.random.PCG64(ss))


def blocks(replicates: int, block_size: int) -> list[tuple[int, int, int]]:
    """``(block_index, first_replicate, count)`` covering ``range(replicates)``."""
    return [
        (b, start, min(block_size, replicates - start))
        for b, start in enumerate(range(0, replicates, block_size))
    ]


def map_blocks(fn: Callable[[int, int, int], T], replicates: int, block_size: int,
               workers: int = 1) -> list[T]:
    """Apply ``fn(block, start, count)`` to each block, results in block order."""
    spans = blocks(replicates, block_size)
    if workers <= 1 or len(spans) <= 1:
        return [fn(*span) for span in spans]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda span: fn(*span), spans))
