"""Feasible contents of compressed sequences.

The content of a length-d sequence over {0, +-1, ..., +-m} is the
multiplicity vector mu = [mu_0, mu_1, mu_-1, ..., mu_m, mu_-m].  A
compressed candidate row must have a content solving the three linear
constraints: total length d, signed value sum a (the row sum), and sum of
squared values w (the weight, forced by a flat power spectrum).  The
solver enumerates every nonnegative solution.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Iterable

import numpy as np

from .seqcore import as_seq

Content = tuple[int, ...]


def slot_values(m: int) -> list[int]:
    """Value carried by each slot of a content vector: 0, 1, -1, ..., m, -m."""
    vals = [0]
    for i in range(1, m + 1):
        vals.extend((i, -i))
    return vals


def content_of(seq: Iterable[int], m: int) -> Content:
    """Multiplicity vector of a bounded integer sequence."""
    x = as_seq(seq)
    if x.size and int(np.abs(x).max()) > m:
        raise ValueError(f"entry bound exceeds {m}")
    return tuple(int((x == v).sum()) for v in slot_values(m))


def content_total(mu: Iterable[int]) -> int:
    return int(sum(mu))


def solve_content_system(d: int, w: int, a: int, m: int) -> list[Content]:
    """All nonnegative contents with given length, row sum and weight.

    Enumerates mu vectors over slots [mu_0, mu_1, mu_-1, ..., mu_m, mu_-m]
    satisfying:

        sum_j mu_j                     = d
        sum_{i>=1} i   * (mu_i - mu_-i) = a
        sum_{i>=1} i^2 * (mu_i + mu_-i) = w

    Returned sorted lexicographically; the empty list is a valid outcome.
    """
    if d < 1 or w < 1 or m < 1:
        raise ValueError("d, w, m must all be >= 1")
    solutions: list[Content] = []

    # Assign pairs (mu_i, mu_-i) for i = m .. 1, tracking the remaining
    # weight budget; mu_0 absorbs whatever length is left.
    def assign(i: int, used: int, sum_left: int, weight_left: int, acc: list[int]):
        if i == 0:
            if weight_left == 0 and sum_left == 0 and used <= d:
                mu = [d - used] + acc
                solutions.append(tuple(mu))
            return
        isq = i * i
        for mu_pos in range(weight_left // isq + 1):
            for mu_neg in range(weight_left // isq - mu_pos + 1):
                if used + mu_pos + mu_neg > d:
                    break
                assign(
                    i - 1,
                    used + mu_pos + mu_neg,
                    sum_left - i * (mu_pos - mu_neg),
                    weight_left - isq * (mu_pos + mu_neg),
                    [mu_pos, mu_neg] + acc,
                )

    assign(m, 0, a, w, [])
    solutions.sort()
    return solutions


def content_sum(mu: Iterable[int], m: int) -> int:
    """Signed sum of any sequence realizing the content."""
    return int(sum(v * c for v, c in zip(slot_values(m), mu)))


def content_square_sum(mu: Iterable[int], m: int) -> int:
    """Sum of squared entries of any sequence realizing the content."""
    return int(sum(v * v * c for v, c in zip(slot_values(m), mu)))


def load_reference_contents() -> set[Content]:
    """The 76 reference contents for the (d, w, a, m) = (20, 36, 6, 3) case."""
    text = (
        resources.files("cwsearch")
        .joinpath("data/reference_contents_20_36.jsonl")
        .read_text()
    )
    return {tuple(json.loads(line)) for line in text.splitlines() if line.strip()}
