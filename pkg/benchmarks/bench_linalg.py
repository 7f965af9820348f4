#!/usr/bin/env python3
"""Benchmark the compiled elimination kernels against the pure fallback.

Both backends are imported directly (no env tricks), fed identical inputs,
and timed on the two hot operations: reduced row echelon form and matrix
product, over GF(97) and over the rationals.

Usage: python benchmarks/bench_linalg.py [--sizes 40,80,120] [--repeat 3]
"""

import argparse
import random
import time
from fractions import Fraction

from periodica import _kernels_py

try:
    from periodica import _kernels
except ImportError:
    _kernels = None


def bench(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def fmt(seconds):
    return f"{seconds * 1000:8.2f} ms"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="40,80,120")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = random.Random(42)
    p = 97

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    else:
        print("compiled kernels not built; benchmarking the fallback only")

    print(f"{'operation':<24} {'size':>6} " +
          " ".join(f"{name:>12}" for name, _ in backends) + "  speedup")
    for n in sizes:
        fp_flat = [rng.randrange(p) for _ in range(n * n)]
        q_flat = [Fraction(rng.randint(-9, 9), rng.choice([1, 1, 2, 3, 5]))
                  for _ in range(n * n)]
        rows = {}
        for name, impl in backends:
            rows[name] = bench(lambda: impl.fp_rref(list(fp_flat), n, n, p),
                               args.repeat)
        line = f"{'rref GF(97)':<24} {n:>6} " + \
            " ".join(fmt(rows[name]) for name, _ in backends)
        if len(backends) == 2:
            line += f"  {rows['python'] / rows['cython']:6.1f}x"
        print(line)
        rows = {}
        for name, impl in backends:
            rows[name] = bench(lambda: impl.q_rref(list(q_flat), n, n),
                               args.repeat)
        line = f"{'rref rationals':<24} {n:>6} " + \
            " ".join(fmt(rows[name]) for name, _ in backends)
        if len(backends) == 2:
            line += f"  {rows['python'] / rows['cython']:6.1f}x"
        print(line)
        k = max(1, n // 2)
        fa = [rng.randrange(p) for _ in range(n * k)]
        fb = [rng.randrange(p) for _ in range(k * n)]
        rows = {}
        for name, impl in backends:
            rows[name] = bench(lambda: impl.fp_matmul(fa, fb, n, k, n, p),
                               args.repeat)
        line = f"{'matmul GF(97)':<24} {n:>6} " + \
            " ".join(fmt(rows[name]) for name, _ in backends)
        if len(backends) == 2:
            line += f"  {rows['python'] / rows['cython']:6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
