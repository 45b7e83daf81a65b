"""Benchmark the compiled grid kernel against the numpy fallback.

Runs the character-system residual evaluation over random point clouds
of increasing size with both backends and prints the timing ratio.

    python3 benchmarks/bench_gridkern.py [--sizes 10000,100000,1000000]
"""

import argparse
import time

import numpy as np

from freeqsg.kernel import backend_name, max_residuals
from freeqsg.qsg import noqg_presentation
from freeqsg.solver import compile_presentation


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="10000,100000,1000000")
    ap.add_argument("--seed", type=int, default=20100101)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    cs = compile_presentation(noqg_presentation())
    rng = np.random.default_rng(args.seed)
    print(f"active backend: {backend_name()}")
    print(f"{'points':>10s} {'compiled':>12s} {'numpy':>12s} {'speedup':>8s}")
    for n in sizes:
        pts = np.ascontiguousarray(
            rng.uniform(-1.5, 1.5, size=(n, len(cs.coord_names)))
        )
        fast = timeit(lambda: max_residuals(cs.flat, pts))
        slow = timeit(lambda: max_residuals(cs.flat, pts, force_numpy=True))
        check = np.allclose(
            max_residuals(cs.flat, pts[:1000]),
            max_residuals(cs.flat, pts[:1000], force_numpy=True),
            rtol=0, atol=1e-13,
        )
        ratio = slow / fast if fast > 0 else float("inf")
        mark = "" if check else "  MISMATCH"
        print(f"{n:>10d} {fast * 1e3:>10.1f}ms {slow * 1e3:>10.1f}ms "
              f"{ratio:>7.2f}x{mark}")


if __name__ == "__main__":
    main()
