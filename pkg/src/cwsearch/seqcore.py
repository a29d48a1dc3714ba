"""Exact-integer sequence algebra for the search.

Periodic autocorrelation (PAF), discrete Fourier transform, power spectral
density, weight statistics, and circulant-matrix verification for ternary
and small bounded integer sequences.

All decisions that feed the search (PAF checks, matrix checks) are exact
integer arithmetic.  DFT/PSD are floating-point diagnostics only and never
gate a search result.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, NamedTuple

import numpy as np

TERNARY_VALUES = (-1, 0, 1)


class NonSquareWeightError(ValueError):
    """Raised when a requested weight is not a perfect square.

    The weight of a circulant weighing matrix is always the square of its
    row sum, so a non-square weight can never be satisfied.
    """


class WeightStats(NamedTuple):
    """Entry counts of a ternary sequence: p zeros, q ones, r minus-ones."""

    p: int
    q: int
    r: int
    a: int  # row sum, q - r
    w: int  # weight, q + r


def as_seq(entries: Iterable[int]) -> np.ndarray:
    """Coerce to a 1-D integer numpy array of length >= 1."""
    arr = np.asarray(entries, dtype=np.int64)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise ValueError("sequence must be 1-D with length >= 1")
    return arr


def as_ternary(entries: Iterable[int]) -> np.ndarray:
    """Coerce to a sequence and require every entry in {-1, 0, +1}."""
    arr = as_seq(entries)
    if not np.isin(arr, (-1, 0, 1)).all():
        raise ValueError("ternary sequence entries must be in {-1, 0, +1}")
    return arr


def entry_bound(seq: Iterable[int]) -> int:
    """Smallest b with |entry| <= b for all entries."""
    arr = as_seq(seq)
    return int(np.abs(arr).max())


def paf(seq: Iterable[int], shift: int) -> int:
    """Periodic autocorrelation sum(seq[i] * seq[i+shift]), indices mod n."""
    x = as_seq(seq)
    n = x.shape[0]
    if not 0 <= shift < n:
        raise ValueError(f"shift must be in [0, {n}), got {shift}")
    return int(np.dot(x, np.roll(x, -shift)))


def paf_vector(seq: Iterable[int]) -> np.ndarray:
    """All periodic autocorrelations; entry 0 is the sum of squared entries."""
    x = as_seq(seq)
    n = x.shape[0]
    return np.array([np.dot(x, np.roll(x, -s)) for s in range(n)], dtype=np.int64)


def is_paf_zero(seq: Iterable[int]) -> bool:
    """True iff every autocorrelation at shift 1..n-1 vanishes."""
    x = as_seq(seq)
    n = x.shape[0]
    for s in range(1, n):
        if np.dot(x, np.roll(x, -s)) != 0:
            return False
    return True


def dft(seq: Iterable[int], s: int) -> complex:
    """Discrete Fourier transform sum(seq[j] * exp(2*pi*i*j*s/n))."""
    x = as_seq(seq)
    n = x.shape[0]
    if not 0 <= s < n:
        raise ValueError(f"index must be in [0, {n}), got {s}")
    omega = 2j * math.pi * s / n
    return complex(sum(int(x[j]) * cmath.exp(omega * j) for j in range(n)))


def psd(seq: Iterable[int], s: int) -> float:
    """Power spectral density: squared modulus of the DFT at index s."""
    return abs(dft(seq, s)) ** 2


def psd_vector(seq: Iterable[int]) -> np.ndarray:
    """PSD at every index 0..n-1."""
    x = as_seq(seq)
    return np.array([psd(x, s) for s in range(x.shape[0])])


def weight_stats(seq: Iterable[int]) -> WeightStats:
    """Zero / +1 / -1 counts with row sum and weight, for a ternary sequence."""
    x = as_ternary(seq)
    q = int((x == 1).sum())
    r = int((x == -1).sum())
    p = x.shape[0] - q - r
    return WeightStats(p=p, q=q, r=r, a=q - r, w=q + r)


def normalize_sign(seq: Iterable[int]) -> np.ndarray:
    """Negate the sequence when its sum is negative; otherwise copy it.

    A weighing matrix and its negation exist together, so searches fix the
    row sum to be nonnegative.
    """
    x = as_seq(seq)
    return -x if int(x.sum()) < 0 else x.copy()


def circulant_matrix(seq: Iterable[int]) -> np.ndarray:
    """n x n circulant whose row i is the first row cyclically shifted by i."""
    x = as_seq(seq)
    n = x.shape[0]
    return np.stack([np.roll(x, i) for i in range(n)])


def _require_square_weight(w: int) -> int:
    if w < 1:
        raise NonSquareWeightError(f"weight must be a positive perfect square, got {w}")
    a = math.isqrt(w)
    if a * a != w:
        raise NonSquareWeightError(f"weight {w} is not a perfect square")
    return a


def verify_cw(seq: Iterable[int], w: int) -> bool:
    """True iff seq is a valid first row for weight w.

    Checks sum of squared entries == w and zero periodic autocorrelation.
    For a ternary sequence the first condition is exactly the weight; for a
    bounded integer sequence (a compressed candidate) it is the matching
    diagonal condition.  Rejects non-square w outright.
    """
    _require_square_weight(w)
    x = as_seq(seq)
    if int(np.dot(x, x)) != w:
        return False
    return is_paf_zero(x)


def verify_cw_matrix(seq: Iterable[int], w: int) -> bool:
    """Independent verification via the explicit product W @ W.T == w * I."""
    _require_square_weight(w)
    x = as_seq(seq)
    mat = circulant_matrix(x)
    gram = mat @ mat.T
    expected = w * np.eye(x.shape[0], dtype=np.int64)
    return bool((gram == expected).all())
