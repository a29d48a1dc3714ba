"""Canonical orbit representatives of a fixed content.

For a content (multiplicity vector) over the alphabet {0, +-1, ..., +-m},
``bracelets`` streams the lexicographically smallest member of every orbit
of the affine group acting on the arrangements, in ascending lexicographic
order under the color order.  ``paf_zero_bracelets`` keeps only the
representatives with zero periodic autocorrelation; since the property is
orbit-invariant, filtering representatives is equivalent to filtering the
whole arrangement class.

The generator is a depth-first arrangement scan with multiplicity
feasibility pruning, incremental rotation-canonicity pruning, and an
exact orbit-minimality check per completed candidate; correctness is
cross-checked against filter-everything oracles in the tests.
"""

from __future__ import annotations

import math
import time
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import backend
from .affine import AffineMap, ColorOrder, enumerate_group, orbit_canonical
from .contents import slot_values
from .seqcore import is_paf_zero

_CHUNK_CAP = 1 << 15


class BudgetExceeded(RuntimeError):
    """Raised when a generation deadline passes between scan chunks."""


def _multiplier_set(group: Sequence[AffineMap], d: int) -> list[int] | None:
    """The multiplier set U when group == {(u, v): u in U, v in Z_d}, else None.

    The fast scan additionally needs U to be a subgroup of the units (so
    that orbits can be walked as decimations of rotations); anything else
    falls back to the generic path.
    """
    pairs = {(s.u % d, s.v % d) for s in group}
    if len(pairs) != len(group):
        return None
    us = sorted({u for u, _ in pairs})
    if pairs != {(u, v) for u in us for v in range(d)}:
        return None
    uset = set(us)
    if 1 % d not in uset:
        return None
    for a in us:
        for b in us:
            if (a * b) % d not in uset:
                return None
    return us


def _content_ranks(content: Iterable[int], order: ColorOrder) -> tuple[np.ndarray, np.ndarray]:
    """Counts per rank and value per rank, ranks ascending in the order."""
    mu = [int(c) for c in content]
    m = (len(mu) - 1) // 2
    if len(mu) != 2 * m + 1 or len(mu) < 1:
        raise ValueError("content must have odd length 2m+1")
    if any(c < 0 for c in mu):
        raise ValueError("content counts must be nonnegative")
    by_value = dict(zip(slot_values(m), mu))
    ordered_vals = [v for v in order.values if v in by_value]
    if len(ordered_vals) != len(by_value):
        raise ValueError("color order does not cover the content alphabet")
    counts = np.array([by_value[v] for v in ordered_vals], dtype=np.int64)
    values = np.array(ordered_vals, dtype=np.int64)
    return counts, values


def _scan_chunks(
    counts: np.ndarray,
    values: np.ndarray,
    prefix: list[int],
    units: np.ndarray,
    d: int,
    paf_only: bool,
    deadline: float | None,
) -> Iterator[np.ndarray]:
    """Yield representative blocks for one prefix subtree, splitting on overflow."""
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("bracelet generation deadline passed")
    out = np.empty((_CHUNK_CAP, d), dtype=np.int64)
    found, overflow, pruned = backend.kernels.bracelet_scan(
        counts, values, np.array(prefix, dtype=np.int64), units, d, paf_only, out
    )
    if pruned:
        return
    if not overflow:
        if found:
            yield out[:found].copy()
        return
    # Too many representatives for one buffer: recurse one position deeper.
    if len(prefix) == d:
        raise AssertionError("overflow on a complete prefix")
    for r in range(counts.shape[0]):
        if counts[r] > 0:
            counts[r] -= 1
            yield from _scan_chunks(
                counts, values, prefix + [r], units, d, paf_only, deadline
            )
            counts[r] += 1


def bracelets(
    content: Iterable[int],
    group: Sequence[AffineMap] | None = None,
    order: ColorOrder | None = None,
    *,
    paf_zero_only: bool = False,
    deadline: float | None = None,
) -> Iterator[np.ndarray]:
    """Stream one lex-minimal representative per group orbit of the content.

    The default group is the full affine group of the content's total
    length.  Representatives are emitted in ascending lexicographic order
    (under the color order) as they are found; nothing is accumulated.
    With a deadline (time.monotonic value), generation stops between scan
    chunks by raising BudgetExceeded.
    """
    mu = [int(c) for c in content]
    d = sum(mu)
    if d < 1:
        raise ValueError("content must describe at least one position")
    m = (len(mu) - 1) // 2
    if order is None:
        order = ColorOrder.default(m)
    if group is None:
        group = enumerate_group(d)
    for sigma in group:
        if sigma.k != d:
            raise ValueError(f"group modulus {sigma.k} != content total {d}")
    counts, values = _content_ranks(mu, order)
    us = _multiplier_set(group, d)
    if us is not None:
        units = np.array(us, dtype=np.int64)
        first = int(np.nonzero(counts)[0][0])
        counts = counts.copy()
        counts[first] -= 1
        for block in _scan_chunks(
            counts, values, [first], units, d, paf_zero_only, deadline
        ):
            for ranks in block:
                yield values[ranks]
        return
    yield from _generic_bracelets(counts, values, d, group, order, paf_zero_only)


def _generic_bracelets(counts, values, d, group, order, paf_zero_only):
    """Filter-everything fallback for groups without the product structure."""
    K = counts.shape[0]
    cnt = counts.tolist()
    x = np.empty(d, dtype=np.int64)

    def rec(j):
        if j == d:
            seq = values[x]
            if (orbit_canonical(seq, group, order) == seq).all():
                if not paf_zero_only or is_paf_zero(seq):
                    yield seq.copy()
            return
        for r in range(K):
            if cnt[r] > 0:
                cnt[r] -= 1
                x[j] = r
                yield from rec(j + 1)
                cnt[r] += 1

    yield from rec(0)


def paf_zero_bracelets(
    content: Iterable[int],
    group: Sequence[AffineMap] | None = None,
    order: ColorOrder | None = None,
    *,
    deadline: float | None = None,
) -> list[np.ndarray]:
    """The orbit representatives of the content with zero autocorrelation."""
    return list(bracelets(content, group, order, paf_zero_only=True, deadline=deadline))


def arrangement_count(content: Iterable[int]) -> int:
    """Number of distinct arrangements of the content (multinomial)."""
    mu = [int(c) for c in content]
    total = math.factorial(sum(mu))
    for c in mu:
        total //= math.factorial(c)
    return total
