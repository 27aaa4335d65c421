#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure numpy/Python fallback.

Times the two hot loops behind the library: inversion-count enumeration
over all N! sectors, and the Metropolis walk over a Slater-determinant
density.  The compiled flavor is what ANYONFLOW_BACKEND=numba (the
default) runs; the fallback is what you get with ANYONFLOW_BACKEND=numpy.

Usage:
    python benchmarks/bench_kernels.py [--quick | --full] [--repeat R]
"""
import argparse
import math
import time

import numpy as np

from anyonflow import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_inversion_counts(n, repeat):
    def compiled():
        out = np.empty(math.factorial(n), dtype=np.int64)
        _kernels.inversion_counts_loop_compiled(n, out)

    def fallback():
        _kernels.inversion_counts_python(n)

    rows = []
    if _kernels.inversion_counts_loop_compiled is not None:
        compiled()  # warm the JIT cache before timing
        rows.append((f"inversion_counts N={n}", "numba", best_of(compiled, repeat)))
    rows.append((f"inversion_counts N={n}", "numpy", best_of(fallback, repeat)))
    return rows


def bench_metropolis(n, n_samples, repeat):
    burn, thin = 10_000, 5
    steps = burn + n_samples * thin
    rng = np.random.default_rng(7)
    occ = np.arange(1, n + 1, dtype=np.int64)
    x0 = rng.uniform(0.0, 1.0, n)
    normals = rng.standard_normal((steps, n))
    uniforms = rng.random(steps)

    def run(loop):
        samples = np.empty((n_samples, n))
        loop(_kernels.KIND_BOX, occ, 1.0, 1e-12, x0.copy(), 0.5,
             normals, uniforms, burn, thin, 200, samples)

    label = f"metropolis N={n}, {n_samples} samples"
    rows = []
    if _kernels.metropolis_loop_compiled is not None:
        run(_kernels.metropolis_loop_compiled)  # warm the JIT cache
        rows.append((label, "numba",
                     best_of(lambda: run(_kernels.metropolis_loop_compiled), repeat)))
    rows.append((label, "python",
                 best_of(lambda: run(_kernels.metropolis_loop_python), repeat)))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--quick", action="store_true",
                       help="smaller workloads (seconds total)")
    group.add_argument("--full", action="store_true",
                       help="largest guarded workloads (N=10 enumeration)")
    parser.add_argument("--repeat", type=int, default=3, help="best-of repeats")
    args = parser.parse_args()

    if args.quick:
        enum_n, mc_samples = 8, 5_000
    elif args.full:
        enum_n, mc_samples = 10, 100_000
    else:
        enum_n, mc_samples = 9, 40_000

    if _kernels.metropolis_loop_compiled is None:
        print("numba not importable: timing the fallback flavors only\n")

    rows = bench_inversion_counts(enum_n, args.repeat)
    rows += bench_metropolis(3, mc_samples, args.repeat)

    # speedup is measured against the fallback flavor of the same kernel
    fallback_time = {label: seconds for label, flavor, seconds in rows
                     if flavor != "numba"}
    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'flavor':<7}  {'best (s)':>10}  speedup")
    for label, flavor, seconds in rows:
        speedup = fallback_time[label] / seconds
        print(f"{label:<{width}}  {flavor:<7}  {seconds:>10.4f}  {speedup:>6.2f}x")


if __name__ == "__main__":
    main()
