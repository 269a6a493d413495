"""Compare the compiled subsampling kernel with the numpy fallback.

    python benchmarks/bench_subsample.py --rows 8580 --cols 1205 --replicates 2000

Both backends receive identical uniforms, so the script also checks that
their survivor counts agree.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from listwise import MissingnessMatrix, _fallback

try:
    from listwise import _kernels
except ImportError:
    _kernels = None


def timed(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=8580)
    parser.add_argument("--cols", type=int, default=1205)
    parser.add_argument("--missing", type=float, default=0.3)
    parser.add_argument("--replicates", type=int, default=2000)
    parser.add_argument("--k", type=int, action="append")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    m = MissingnessMatrix.from_bool(rng.random((args.rows, args.cols)) < args.missing)
    colbits = m.column_bits
    eligible = np.arange(args.cols, dtype=np.int64)
    print(f"matrix {args.rows}x{args.cols}, {args.replicates} replicates per k")
    print(f"{'k':>5} {'numpy s':>10} {'cython s':>10} {'speedup':>8}")
    for k in args.k or [2, 10, 50]:
        u = rng.random((args.replicates, k))
        t_np, ref = timed(_fallback.subsample_survivors, colbits, eligible, u, args.rows)
        if _kernels is None:
            print(f"{k:>5} {t_np:>10.4f} {'n/a':>10} {'':>8}")
            continue
        t_cy, out = timed(_kernels.subsample_survivors, colbits, eligible, u, args.rows)
        assert np.array_equal(ref, out), "backends disagree"
        print(f"{k:>5} {t_np:>10.4f} {t_cy:>10.4f} {t_np / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
