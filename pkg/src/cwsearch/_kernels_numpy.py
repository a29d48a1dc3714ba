"""Pure numpy/python fallback for the hot kernels.

Same contracts as ``_kernels_numba``; used when numba is unavailable or
when CWSEARCH_BACKEND=numpy is set.  The fiber scan vectorizes the PAF
check over blocks of candidates with a survivor cascade (almost every
candidate dies at the first shift); the bracelet scan is a plain
recursive DFS with the same pruning rules as the jitted version.
"""

import numpy as np

NAME = "numpy"

_BLOCK_CAP = 16384


def _block_tail(radices, lo):
    """Longest suffix of mutable positions whose digit product fits a block."""
    d = len(radices)
    t = d
    prod = 1
    while t > lo:
        nxt = prod * radices[t - 1]
        if nxt > _BLOCK_CAP and prod > 1:
            break
        prod = nxt
        t -= 1
    return t, prod


def _paf_survivors(X):
    """Indices of rows with zero periodic autocorrelation (exact ints)."""
    n = X.shape[1]
    alive = np.arange(X.shape[0])
    Xa = X.astype(np.int64)
    for s in range(1, n):
        pafs = np.einsum("ij,ij->i", Xa, np.roll(Xa, -s, axis=1))
        keep = pafs == 0
        alive = alive[keep]
        if alive.size == 0:
            return alive
        Xa = Xa[keep]
    return alive


def scan_fiber(tuple_array, bidx, sizes, digits, lo, steps):
    """Block-vectorized equivalent of the jitted odometer scan."""
    d = bidx.shape[0]
    m = tuple_array.shape[2]
    n = d * m
    radices = [int(sizes[bidx[j]]) for j in range(d)]
    checked = 0
    found = False
    exhausted = False
    witness = np.zeros(n, np.int8)
    if steps <= 0:
        return found, np.int64(0), exhausted, witness

    t0, block = _block_tail(radices, lo)
    tail = list(range(t0, d))
    # Tail digit matrix and the tail part of each candidate, built once.
    if tail:
        tail_digits = np.stack(
            np.unravel_index(np.arange(block), [radices[j] for j in tail]), axis=1
        )
        tail_cols = np.array([j + k * d for j in tail for k in range(m)])
        tail_vals = np.concatenate(
            [tuple_array[bidx[j], tail_digits[:, jj], :] for jj, j in enumerate(tail)],
            axis=1,
        )
    else:
        tail_digits = np.zeros((1, 0), np.int64)
        tail_cols = np.array([], np.int64)
        tail_vals = np.zeros((1, 0), np.int8)
        block = 1

    head = list(range(lo, t0))
    base = np.empty(n, np.int8)

    def fill_base():
        for j in range(d):
            tup = tuple_array[bidx[j], digits[j]]
            for k in range(m):
                base[j + k * d] = tup[k]

    def tail_offset():
        off = 0
        for j in tail:
            off = off * radices[j] + int(digits[j])
        return off

    def set_tail_from_offset(off):
        for j in reversed(tail):
            digits[j] = off % radices[j]
            off //= radices[j]

    def advance_head():
        """Odometer step over head positions; True when wrapped past lo."""
        p = t0 - 1
        while p >= lo:
            digits[p] += 1
            if digits[p] < radices[p]:
                return False
            digits[p] = 0
            p -= 1
        return True

    while True:
        fill_base()
        off = tail_offset()
        take = min(block - off, steps - checked)
        rows = slice(off, off + take)
        X = np.tile(base, (take, 1))
        if tail:
            X[:, tail_cols] = tail_vals[rows]
        alive = _paf_survivors(X)
        if alive.size > 0:
            hit = int(alive[0])
            checked += hit + 1
            found = True
            witness = X[hit].copy()
            set_tail_from_offset(off + hit)
            break
        checked += take
        if off + take == block:
            # block done: advance the head odometer
            set_tail_from_offset(0)
            if not head and tail:
                # no head positions: a single block covers the whole range
                exhausted = True
                break
            if advance_head():
                exhausted = True
                break
        else:
            set_tail_from_offset(off + take)
        if checked >= steps:
            break
        if not tail and not head:
            exhausted = True
            break
    return found, np.int64(checked), exhausted, witness


def _final_minimal(x, d, und_d, units, values, paf_only):
    for p in und_d:
        for t2 in range(d - p, d):
            rv = x[p + t2 - d]
            bv = x[t2]
            if rv != bv:
                if rv < bv:
                    return False
                break
    if paf_only:
        vals = [values[r] for r in x]
        for s in range(1, d):
            acc = 0
            for i in range(d):
                acc += vals[i] * vals[(i + s) % d]
            if acc != 0:
                return False
    for u in units:
        if u == 1:
            continue
        for c in range(d):
            idx = (u * c) % d
            for i in range(d):
                rv = x[idx]
                bv = x[i]
                if rv != bv:
                    if rv < bv:
                        return False
                    break
                idx += u
                if idx >= d:
                    idx -= d
    return True


def bracelet_scan(counts, values, prefix, units, d, paf_only, out):
    """Recursive equivalent of the jitted arrangement scan."""
    P = prefix.shape[0]
    K = counts.shape[0]
    cap = out.shape[0]
    x = [0] * d
    for j in range(P):
        x[j] = int(prefix[j])
    vals = [int(v) for v in values]
    us = [int(u) for u in units]
    cnt = [int(c) for c in counts]

    def step_und(und, j, r):
        """None when a strictly smaller rotation is forced; else new state."""
        new = []
        for p in und:
            b = x[j - p]
            if r < b:
                return None
            if r == b:
                new.append(p)
        if r < x[0]:
            return None
        if r == x[0]:
            new.append(j)
        return new

    und = []
    for j in range(1, P):
        und = step_und(und, j, x[j])
        if und is None:
            return np.int64(0), False, True

    found = 0
    overflow = False

    def rec(j, und):
        nonlocal found, overflow
        if j == d:
            if _final_minimal(x, d, und, us, vals, paf_only):
                if found == cap:
                    overflow = True
                    return
                out[found, :] = x
                found += 1
            return
        for r in range(K):
            if cnt[r] == 0:
                continue
            nxt = step_und(und, j, r)
            if nxt is None:
                continue
            x[j] = r
            cnt[r] -= 1
            rec(j + 1, nxt)
            cnt[r] += 1
            if overflow:
                return

    if P < d:
        rec(P, und)
    else:
        if _final_minimal(x, d, und, us, vals, paf_only):
            out[0, :] = x
            found = 1
    return np.int64(found), overflow, False
