#!/usr/bin/env python3
"""Time the hot verification kernels on both backends.

Runs each kernel through its numba-compiled path (when numba is available)
and through the pure numpy/python fallback, and prints the timings side by
side.  Run as:

    python3 benchmarks/bench_kernels.py
"""

import itertools
import time

import numpy as np

from tomosched import _backend
from tomosched.majorana_cover import four_majorana_cover
from tomosched.verify import (
    _accumulate_kernel,
    _accumulate_numpy,
    _pair_table,
    _quads_covered_kernel,
    _quads_covered_numpy,
    _splitting_pids,
    sample_estimate,
)


def time_call(fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_quad_coverage(n_fermions=16):
    fam = four_majorana_cover(n_fermions)
    n_modes = 2 * n_fermions
    table = _pair_table(fam, n_modes)
    quads = list(itertools.combinations(range(n_modes), 4))
    pids = _splitting_pids(quads, n_modes)
    rows = []
    if _backend.NUMBA_ENABLED:
        out = np.zeros(len(quads), dtype=np.bool_)
        _quads_covered_kernel(pids, table, out)  # compile
        rows.append(("numba", time_call(
            lambda: _quads_covered_kernel(pids, table, out))))
    rows.append(("numpy", time_call(lambda: _quads_covered_numpy(pids, table))))
    label = f"quad coverage scan (N={n_fermions}, {len(quads)} quadruples, {len(fam)} cliques)"
    return label, rows


def bench_accumulate(shots=200_000, n_ops=70):
    rng = np.random.default_rng(0)
    eig = rng.choice(np.array([-1, 1], dtype=np.int8), size=(shots, 8))
    op_cols = [sorted(rng.choice(8, size=2, replace=False).tolist())
               for _ in range(n_ops)]
    signs = [1.0] * n_ops
    rows = []
    if _backend.NUMBA_ENABLED:
        kmax = max(len(c) for c in op_cols)
        cols = np.zeros((n_ops, kmax), dtype=np.int64)
        for i, c in enumerate(op_cols):
            cols[i, : len(c)] = c
        lens = np.array([len(c) for c in op_cols], dtype=np.int64)
        sums = np.zeros(n_ops)
        sg = np.array(signs)
        _accumulate_kernel(eig, cols, lens, sg, sums)  # compile
        rows.append(("numba", time_call(
            lambda: _accumulate_kernel(eig, cols, lens, sg, sums))))
    rows.append(("numpy", time_call(
        lambda: _accumulate_numpy(eig, op_cols, signs))))
    return f"outcome accumulation ({shots} shots x {n_ops} operators)", rows


def bench_end_to_end_sampling():
    fam = four_majorana_cover(4)
    rows = [("active backend", time_call(
        lambda: sample_estimate("mixed", fam, 4096, k=2, seed=0), repeats=2))]
    return "sample_estimate mixed N=4 M=4096 (18 cliques)", rows


def main():
    backend = "numba" if _backend.NUMBA_ENABLED else "numpy (fallback)"
    print(f"active backend: {backend}")
    print("set TOMOSCHED_BACKEND=numpy to force the fallback\n")
    for label, rows in (
        bench_quad_coverage(),
        bench_accumulate(),
        bench_end_to_end_sampling(),
    ):
        print(label)
        for name, seconds in rows:
            print(f"  {name:>16}: {seconds * 1e3:9.2f} ms")
        print()


if __name__ == "__main__":
    main()
