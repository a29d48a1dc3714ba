"""The m-compression map and its preimage (fiber) machinery.

Compressing a length-n ternary sequence with factor m = n/d sums entries
along arithmetic progressions of step d, producing a length-d integer
sequence with entries bounded by m.  The preimage of a compressed sequence
is a product set: position j independently ranges over all ternary
m-tuples summing to that entry.  Fibers are indexed by mixed-radix
integers so exhaustive scans can be sharded and resumed deterministically.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .seqcore import as_seq, as_ternary

# Ternary values in the order used to sort fiber tuples (0 < 1 < -1).
_TERNARY_ORDERED = (0, 1, -1)


def compress(seq: Iterable[int], d: int) -> np.ndarray:
    """Sum entries along step-d progressions: out[i] = sum_k seq[i + k*d]."""
    x = as_seq(seq)
    n = x.shape[0]
    if d < 1 or n % d != 0:
        raise ValueError(f"{d} does not divide {n}")
    m = n // d
    return x.reshape(m, d).sum(axis=0)


class FiberTable:
    """For each value b with |b| <= m, all ternary m-tuples summing to b.

    Tuple lists are lexicographic under the value order 0 < 1 < -1, so
    mixed-radix digit 0 always selects the first tuple.  The padded
    ``tuple_array`` view (2m+1, max_count, m) is what the scan kernels
    consume; row b+m holds the tuples for value b.
    """

    def __init__(self, m: int):
        if m < 1:
            raise ValueError(f"compression factor must be >= 1, got {m}")
        self.m = m
        buckets: dict[int, list[tuple[int, ...]]] = {
            b: [] for b in range(-m, m + 1)
        }
        for tup in itertools.product(_TERNARY_ORDERED, repeat=m):
            buckets[sum(tup)].append(tup)
        self.tuples: dict[int, np.ndarray] = {
            b: np.array(tups, dtype=np.int8).reshape(len(tups), m)
            for b, tups in buckets.items()
        }
        self.sizes = np.array(
            [len(buckets[b]) for b in range(-m, m + 1)], dtype=np.int64
        )
        max_count = int(self.sizes.max())
        self.tuple_array = np.zeros((2 * m + 1, max_count, m), dtype=np.int8)
        for b in range(-m, m + 1):
            arr = self.tuples[b]
            self.tuple_array[b + m, : arr.shape[0], :] = arr

    def count(self, b: int) -> int:
        """Number of ternary m-tuples summing to b."""
        if abs(b) > self.m:
            return 0
        return int(self.sizes[b + self.m])

    def tuples_for(self, b: int) -> np.ndarray:
        if abs(b) > self.m:
            raise ValueError(f"|{b}| exceeds compression factor {self.m}")
        return self.tuples[b]


@lru_cache(maxsize=None)
def fiber_table(m: int) -> FiberTable:
    return FiberTable(m)


def _radices(B: np.ndarray, table: FiberTable) -> list[int]:
    if int(np.abs(B).max(initial=0)) > table.m:
        raise ValueError(f"entry bound of sequence exceeds factor {table.m}")
    return [table.count(int(b)) for b in B]


def fiber_size(B: Iterable[int], m: int) -> int:
    """Exact number of ternary preimages of B under m-compression."""
    arr = as_seq(B)
    table = fiber_table(m)
    size = 1
    for r in _radices(arr, table):
        size *= r
    return size


def digits_of_index(radices: Sequence[int], index: int) -> list[int]:
    """Mixed-radix digits of index, most significant digit first."""
    total = 1
    for r in radices:
        total *= r
    if not 0 <= index < total:
        raise ValueError(f"index {index} out of range [0, {total})")
    digits = [0] * len(radices)
    rem = index
    for j in range(len(radices) - 1, -1, -1):
        digits[j] = rem % radices[j]
        rem //= radices[j]
    return digits


def index_of_digits(radices: Sequence[int], digits: Sequence[int]) -> int:
    """Inverse of digits_of_index; exact arbitrary-precision arithmetic."""
    if len(digits) != len(radices):
        raise ValueError("digit vector length must match radices")
    index = 0
    for r, dig in zip(radices, digits):
        if not 0 <= dig < r:
            raise ValueError(f"digit {dig} out of range [0, {r})")
        index = index * r + dig
    return index


def lift_digits(B: Iterable[int], m: int, digits: Sequence[int]) -> np.ndarray:
    """Assemble the ternary preimage selected by a mixed-radix digit vector."""
    arr = as_seq(B)
    d = arr.shape[0]
    table = fiber_table(m)
    x = np.empty(d * m, dtype=np.int64)
    for j in range(d):
        tup = table.tuples_for(int(arr[j]))[digits[j]]
        for k in range(m):
            x[j + k * d] = tup[k]
    return x


def lift_at(B: Iterable[int], m: int, index: int) -> np.ndarray:
    """The index-th ternary preimage of B, in mixed-radix order.

    Position 0 of B carries the most significant digit.  The map is a
    bijection from [0, fiber_size) onto the full preimage set.
    """
    arr = as_seq(B)
    table = fiber_table(m)
    radices = _radices(arr, table)
    digits = digits_of_index(radices, index)
    return lift_digits(arr, m, digits)


def lift_index(B: Iterable[int], m: int, seq: Iterable[int]) -> int:
    """Inverse of lift_at: the mixed-radix index of a given preimage."""
    arr = as_seq(B)
    x = as_ternary(seq)
    d = arr.shape[0]
    if x.shape[0] != d * m:
        raise ValueError(f"preimage length {x.shape[0]} != {d * m}")
    table = fiber_table(m)
    radices = _radices(arr, table)
    digits = []
    for j in range(d):
        tup = tuple(int(x[j + k * d]) for k in range(m))
        choices = table.tuples_for(int(arr[j]))
        matches = np.nonzero((choices == np.array(tup, dtype=np.int8)).all(axis=1))[0]
        if matches.size != 1:
            raise ValueError(f"sequence is not a preimage of B at position {j}")
        digits.append(int(matches[0]))
    return index_of_digits(radices, digits)
