"""Benchmark the compiled row-reduction kernel against the numpy fallback.

Runs full row reduction mod p on seeded random matrices at a few
representative shapes (square, wide, tall) and prints a timing table.
Both backends are checked for agreeing ranks on every instance, so the
benchmark doubles as a parity test.

Usage:
    python3 benchmarks/bench_rref.py [--prime P] [--repeats R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from nlgotz import _kernel_py

try:
    from nlgotz import _kernel
except ImportError:
    _kernel = None

SHAPES = [
    (50, 50),
    (100, 100),
    (200, 200),
    (400, 400),
    (100, 500),
    (500, 100),
    (300, 1200),
]


def _time_backend(fn, mat: np.ndarray, p: int, repeats: int) -> tuple[float, int]:
    """Best-of-repeats wall time in seconds plus the computed rank."""
    best = float("inf")
    rank = -1
    for _ in range(repeats):
        work = mat.copy()
        t0 = time.perf_counter()
        rank = fn(work, p)
        best = min(best, time.perf_counter() - t0)
    return best, rank


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--prime", type=int, default=101)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)

    print(f"prime = {args.prime}, repeats = {args.repeats} (best shown)")
    if _kernel is None:
        print("compiled kernel not available; timing the python backend only")
    header = f"{'shape':>12}  {'python (s)':>12}  {'compiled (s)':>12}  {'speedup':>8}"
    print(header)
    print("-" * len(header))

    for rows, cols in SHAPES:
        mat = rng.integers(0, args.prime, size=(rows, cols), dtype=np.int64)
        t_py, rank_py = _time_backend(
            _kernel_py.rref_inplace, mat, args.prime, args.repeats
        )
        if _kernel is not None:
            t_c, rank_c = _time_backend(
                _kernel.rref_inplace, mat, args.prime, args.repeats
            )
            if rank_c != rank_py:
                raise AssertionError(
                    f"backend disagreement at {rows}x{cols}: {rank_c} != {rank_py}"
                )
            speedup = t_py / t_c if t_c > 0 else float("inf")
            print(
                f"{rows:>5}x{cols:<6}  {t_py:>12.4f}  {t_c:>12.4f}  {speedup:>7.1f}x"
            )
        else:
            print(f"{rows:>5}x{cols:<6}  {t_py:>12.4f}  {'-':>12}  {'-':>8}")


if __name__ == "__main__":
    main()
