#!/usr/bin/env python3
"""Throughput comparison of the numba kernels vs the pure-numpy fallback.

Measures the two hot loops on representative workloads:

  fiber-scan      candidates/second scanning a compression preimage at
                  n=60 (the published 7^14-sized shard of B2)
  bracelet-scan   arrangements/second generating canonical representatives
                  (the 19380-arrangement content and, with --full, the
                  9.2M-arrangement one)

Usage: python benchmarks/bench_backends.py [--full]
"""

import argparse
import sys
import time

import cwsearch._kernels_numpy as kernels_numpy
from cwsearch import backend, canon
from cwsearch.liftsearch import plan_shards, search_shard

try:
    import cwsearch._kernels_numba as kernels_numba
except ImportError:
    kernels_numba = None

B2 = [0, 0, 0, 0, 0, 0, 0, 0, 3, 3, 0, 0, 0, 0, 0, 0, 0, 0, 3, -3]
CHEAP = (16, 0, 0, 0, 0, 3, 1)
HEAVY = (0, 9, 9, 0, 0, 2, 0)


def bench_fiber(kern, candidates):
    backend.kernels = kern
    plan = plan_shards(B2, 3, 49)
    search_shard(plan, 0, max_checked=1000)  # warm-up / JIT
    t0 = time.perf_counter()
    out = search_shard(plan, 0, max_checked=candidates)
    dt = time.perf_counter() - t0
    assert out.sequences_checked == candidates
    return candidates / dt


def bench_bracelets(kern, content):
    backend.kernels = kern
    list(canon.bracelets([0, 2, 1]))  # warm-up / JIT
    t0 = time.perf_counter()
    reps = canon.paf_zero_bracelets(content)
    dt = time.perf_counter() - t0
    return canon.arrangement_count(content) / dt, len(reps), dt


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true",
                    help="include the 9.2M-arrangement content")
    args = ap.parse_args(argv)

    backends = [("numpy", kernels_numpy)]
    if kernels_numba is not None:
        backends.insert(0, ("numba", kernels_numba))
    else:
        print("numba not importable; benchmarking the fallback only")

    print(f"{'backend':8s} {'workload':28s} {'rate':>14s}  note")
    rows = {}
    for name, kern in backends:
        cand = 2_000_000 if name == "numba" else 200_000
        rate = bench_fiber(kern, cand)
        rows[(name, "fiber")] = rate
        print(f"{name:8s} {'fiber-scan n=60':28s} {rate / 1e6:11.2f} M/s  "
              f"({cand:.0e} candidates)")
        rate, nreps, dt = bench_bracelets(kern, CHEAP)
        rows[(name, "cheap")] = rate
        print(f"{name:8s} {'bracelet-scan 19380 arr.':28s} {rate / 1e6:11.2f} M/s  "
              f"({nreps} reps, {dt:.3f}s)")
        if args.full:
            rate, nreps, dt = bench_bracelets(kern, HEAVY)
            print(f"{name:8s} {'bracelet-scan 9.24M arr.':28s} {rate / 1e6:11.2f} M/s  "
                  f"({nreps} reps, {dt:.1f}s)")

    if kernels_numba is not None:
        for work in ("fiber", "cheap"):
            ratio = rows[("numba", work)] / rows[("numpy", work)]
            print(f"speedup numba/numpy on {work}: {ratio:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
