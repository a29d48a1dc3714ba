#!/usr/bin/env python3
"""Full bracelet sweep over all 76 contents of the (60, 36, m=3) instance.

Prints every zero-autocorrelation representative found, per content, with
timings.  Contents are independent, so they are distributed over worker
processes.  This is the long-running nightly job behind acceptance
criterion 4; expect a few CPU-hours.

Usage: python benchmarks/full_sweep.py [--workers N] [--out results.jsonl]
"""

import argparse
import json
import multiprocessing as mp
import sys
import time

from cwsearch import canon
from cwsearch.contents import solve_content_system


def sweep_one(mu):
    t0 = time.time()
    reps = [list(map(int, r)) for r in canon.paf_zero_bracelets(mu)]
    return list(mu), reps, time.time() - t0, canon.arrangement_count(mu)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--workers", type=int, default=max(1, mp.cpu_count()))
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    contents = solve_content_system(20, 36, 6, 3)
    # largest arrangement spaces first for better load balance
    contents = sorted(contents, key=canon.arrangement_count, reverse=True)
    union = []
    t0 = time.time()
    sink = open(args.out, "w") if args.out else None
    with mp.Pool(args.workers) as pool:
        for mu, reps, dt, space in pool.imap_unordered(sweep_one, contents):
            line = {"content": mu, "paf_zero": reps, "arrangements": space,
                    "seconds": round(dt, 1)}
            print(json.dumps(line), flush=True)
            if sink:
                sink.write(json.dumps(line) + "\n")
                sink.flush()
            union.extend(tuple(r) for r in reps)
    if sink:
        sink.close()
    print(f"# total {time.time() - t0:.0f}s; union of representatives:",
          file=sys.stderr)
    for rep in sorted(set(union)):
        print(json.dumps(list(rep)), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
