"""Numba implementations of the two hot inner loops.

Both kernels share exact contracts with the pure-numpy versions in
``_kernels_numpy``; the backend module picks one pair at import time.

scan_fiber     odometer enumeration of a compression preimage with an
               early-exit integer PAF check per candidate.
bracelet_scan  depth-first arrangement scan of a fixed content with
               incremental rotation-canonicity pruning and a final exact
               orbit-minimality (and optionally PAF-zero) check.
"""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True, nogil=True)
def scan_fiber(tuple_array, bidx, sizes, digits, lo, steps):
    """Check up to `steps` preimages starting at the digit vector `digits`.

    tuple_array : (V, maxcount, m) int8, fiber tuples per value slot
    bidx        : (d,) int64, value slot of each position
    sizes       : (V,) int64, fiber count per value slot
    digits      : (d,) int64, mutated in place to the final odometer state
    lo          : first mutable position; digits[:lo] stay fixed
    steps       : max candidates to check

    Returns (found, checked, exhausted, witness); `witness` is only
    meaningful when found.  Candidates are visited in mixed-radix order
    (most significant digit at position 0), so the first witness is the
    one with the smallest fiber index.
    """
    d = bidx.shape[0]
    m = tuple_array.shape[2]
    n = d * m
    x = np.empty(n, np.int8)
    for j in range(d):
        t = digits[j]
        for k in range(m):
            x[j + k * d] = tuple_array[bidx[j], t, k]
    witness = np.zeros(n, np.int8)
    checked = np.int64(0)
    found = False
    exhausted = False
    while checked < steps:
        ok = True
        for s in range(1, n):
            acc = 0
            for i in range(n - s):
                acc += x[i] * x[i + s]
            for i in range(n - s, n):
                acc += x[i] * x[i + s - n]
            if acc != 0:
                ok = False
                break
        checked += 1
        if ok:
            found = True
            for i in range(n):
                witness[i] = x[i]
            break
        p = d - 1
        while p >= lo:
            digits[p] += 1
            if digits[p] < sizes[bidx[p]]:
                t = digits[p]
                for k in range(m):
                    x[p + k * d] = tuple_array[bidx[p], t, k]
                break
            digits[p] = 0
            for k in range(m):
                x[p + k * d] = tuple_array[bidx[p], 0, k]
            p -= 1
        if p < lo:
            exhausted = True
            break
    return found, checked, exhausted, witness


@njit(cache=True, nogil=True)
def bracelet_scan(counts, values, prefix, units, d, paf_only, out):
    """DFS over arrangements of a multiset, emitting orbit-minimal ones.

    counts  : (K,) int64, multiplicity per rank remaining after the prefix
              (mutated during the scan, restored on return)
    values  : (K,) int64, alphabet value of each rank, ranks ascending
    prefix  : (P,) int64, ranks fixed at positions 0..P-1, P >= 1
    units   : (U,) int64, multiplier set of the group (must contain 1)
    paf_only: emit only zero-autocorrelation arrangements
    out     : (cap, d) int64 output buffer of rank vectors

    Returns (found, overflow, pruned_prefix).  Emission order is
    lexicographic by rank.  A candidate is emitted iff it is the
    lexicographically smallest element of its orbit under the group
    {i -> u*i + v : u in units, v arbitrary}.

    The incremental state tracks, for each rotation start p, whether the
    rotated word still ties the base word on the already-fixed region;
    a rotation that wins strictly prunes the branch.  Ties surviving to a
    leaf are settled on the wrapped region, then non-trivial multipliers
    are checked exactly.
    """
    P = prefix.shape[0]
    K = counts.shape[0]
    cap = out.shape[0]
    x = np.zeros(d, np.int64)
    for j in range(P):
        x[j] = prefix[j]
    # und[j] lists rotation starts p < j with x[p..j-1] == x[0..j-1-p]
    und = np.zeros((d + 1, d), np.int64)
    und_len = np.zeros(d + 1, np.int64)
    cur = np.zeros(d + 1, np.int64)

    # Replay the prefix through the rotation-state transitions.
    for j in range(1, P):
        r = x[j]
        nl = 0
        fail = False
        for t in range(und_len[j]):
            p = und[j, t]
            b = x[j - p]
            if r < b:
                fail = True
                break
            if r == b:
                und[j + 1, nl] = p
                nl += 1
        if not fail:
            if r < x[0]:
                fail = True
            elif r == x[0]:
                und[j + 1, nl] = j
                nl += 1
        if fail:
            return np.int64(0), False, True
        und_len[j + 1] = nl

    found = np.int64(0)
    overflow = False
    j = P
    cur[j] = 0
    while j >= P:
        if j == d:
            # wrapped-region comparison for rotations still tied
            minimal = True
            for t in range(und_len[d]):
                p = und[d, t]
                for t2 in range(d - p, d):
                    rv = x[p + t2 - d]
                    bv = x[t2]
                    if rv != bv:
                        if rv < bv:
                            minimal = False
                        break
                if not minimal:
                    break
            if minimal and paf_only:
                for s in range(1, d):
                    acc = 0
                    for i in range(d - s):
                        acc += values[x[i]] * values[x[i + s]]
                    for i in range(d - s, d):
                        acc += values[x[i]] * values[x[i + s - d]]
                    if acc != 0:
                        minimal = False
                        break
            if minimal:
                for ui in range(units.shape[0]):
                    u = units[ui]
                    if u == 1:
                        continue
                    for c in range(d):
                        idx = (u * c) % d
                        cmp = 0
                        for i in range(d):
                            rv = x[idx]
                            bv = x[i]
                            if rv != bv:
                                if rv < bv:
                                    cmp = -1
                                else:
                                    cmp = 1
                                break
                            idx += u
                            if idx >= d:
                                idx -= d
                        if cmp == -1:
                            minimal = False
                            break
                    if not minimal:
                        break
            if minimal:
                if found == cap:
                    overflow = True
                    break
                for i in range(d):
                    out[found, i] = x[i]
                found += 1
            j -= 1
            if j < P:
                break
            counts[x[j]] += 1
            cur[j] = x[j] + 1
            continue
        advanced = False
        r = cur[j]
        while r < K:
            if counts[r] > 0:
                nl = 0
                fail = False
                for t in range(und_len[j]):
                    p = und[j, t]
                    b = x[j - p]
                    if r < b:
                        fail = True
                        break
                    if r == b:
                        und[j + 1, nl] = p
                        nl += 1
                if not fail:
                    if r < x[0]:
                        fail = True
                    elif r == x[0]:
                        und[j + 1, nl] = j
                        nl += 1
                if not fail:
                    und_len[j + 1] = nl
                    x[j] = r
                    counts[r] -= 1
                    cur[j] = r
                    j += 1
                    cur[j] = 0
                    advanced = True
                    break
            r += 1
        if not advanced:
            j -= 1
            if j < P:
                break
            counts[x[j]] += 1
            cur[j] = x[j] + 1

    # Restore counts consumed by any in-flight path (overflow exit).
    for jj in range(P, min(j + 1, d)):
        counts[x[jj]] += 1
    return found, overflow, False
