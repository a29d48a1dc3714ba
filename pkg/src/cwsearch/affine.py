"""Affine index maps i -> u*i + v modulo k, their action on sequences,
orbit canonical forms, and the lift from modulus d to a multiple n.

The group of such maps with u invertible acts on length-k sequences by
index permutation; two sequences are equivalent when one is the image of
the other.  Canonical forms are lexicographic minima over an orbit under
an explicit ordering of the value alphabet.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .seqcore import as_seq


class ModulusMismatchError(ValueError):
    """Raised when map moduli and operand lengths disagree."""


@dataclass(frozen=True)
class AffineMap:
    """The map i -> (u*i + v) mod k with gcd(u, k) = 1."""

    u: int
    v: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"modulus must be >= 1, got {self.k}")
        if not (0 <= self.u < self.k and 0 <= self.v < self.k):
            raise ValueError(f"u, v must lie in [0, {self.k})")
        if math.gcd(self.u, self.k) != 1:
            raise ValueError(f"u={self.u} is not a unit modulo {self.k}")

    def __call__(self, i: int) -> int:
        return (self.u * i + self.v) % self.k

    def to_json(self) -> str:
        return json.dumps({"u": self.u, "v": self.v, "k": self.k})

    @classmethod
    def from_json(cls, text: str) -> "AffineMap":
        obj = json.loads(text)
        return cls(u=obj["u"], v=obj["v"], k=obj["k"])


def identity(k: int) -> AffineMap:
    return AffineMap(u=1 % k, v=0, k=k)


def units(k: int) -> list[int]:
    """The invertible residues modulo k."""
    return [u for u in range(k) if math.gcd(u, k) == 1]


def _check_same_modulus(sigma: AffineMap, tau: AffineMap) -> None:
    if sigma.k != tau.k:
        raise ModulusMismatchError(f"moduli differ: {sigma.k} != {tau.k}")


def compose(sigma: AffineMap, tau: AffineMap) -> AffineMap:
    """The map sigma(tau(i)); matches the 2x2 matrix product [[u,v],[0,1]]."""
    _check_same_modulus(sigma, tau)
    k = sigma.k
    return AffineMap(u=(sigma.u * tau.u) % k, v=(sigma.u * tau.v + sigma.v) % k, k=k)


def invert(sigma: AffineMap) -> AffineMap:
    k = sigma.k
    u_inv = pow(sigma.u, -1, k)
    return AffineMap(u=u_inv, v=(-u_inv * sigma.v) % k, k=k)


def apply(sigma: AffineMap, seq: Iterable[int]) -> np.ndarray:
    """Permute a sequence: output[i] = input[sigma^{-1}(i)].

    Equivalently output[sigma(j)] = input[j], which is how it is computed.
    """
    x = as_seq(seq)
    k = x.shape[0]
    if k != sigma.k:
        raise ModulusMismatchError(f"map modulus {sigma.k} != sequence length {k}")
    out = np.empty_like(x)
    idx = (sigma.u * np.arange(k) + sigma.v) % k
    out[idx] = x
    return out


def enumerate_group(k: int) -> list[AffineMap]:
    """All k * phi(k) affine maps modulo k."""
    if k < 1:
        raise ValueError(f"modulus must be >= 1, got {k}")
    return [AffineMap(u=u, v=v, k=k) for u in units(k) for v in range(k)]


def lift_affine(sigma: AffineMap, n: int) -> AffineMap:
    """Lift a map modulo d to modulus n (d | n), congruent to it mod d.

    The reduction of units modulo d is surjective, so a lifted multiplier
    always exists; the smallest qualifying one is chosen and v is kept,
    making the lift deterministic.
    """
    d = sigma.k
    if n % d != 0:
        raise ValueError(f"{d} does not divide {n}")
    for u_lift in range(sigma.u, n, d):
        if math.gcd(u_lift, n) == 1:
            return AffineMap(u=u_lift, v=sigma.v, k=n)
    raise AssertionError("unreachable: unit reduction mod d is surjective")


class ColorOrder:
    """An explicit total order on the value alphabet used for lexicographic
    comparison of sequences.

    The default order on the bounded alphabet {0, +-1, ..., +-m} is
    0 < 1 < -1 < 2 < -2 < ... < m < -m.
    """

    def __init__(self, values: Sequence[int]):
        self.values = tuple(int(v) for v in values)
        if len(set(self.values)) != len(self.values):
            raise ValueError("color order values must be distinct")
        self._rank = {v: i for i, v in enumerate(self.values)}

    @classmethod
    def default(cls, bound: int) -> "ColorOrder":
        vals = [0]
        for i in range(1, bound + 1):
            vals.extend((i, -i))
        return cls(vals)

    def rank(self, value: int) -> int:
        return self._rank[int(value)]

    def key(self, seq: Iterable[int]) -> tuple[int, ...]:
        """Rank tuple used for lexicographic comparison."""
        return tuple(self._rank[int(v)] for v in seq)

    def rank_array(self, seq: Iterable[int]) -> np.ndarray:
        return np.array(self.key(seq), dtype=np.int64)

    def value_array(self, ranks: Iterable[int]) -> np.ndarray:
        return np.array([self.values[int(r)] for r in ranks], dtype=np.int64)

    def __repr__(self) -> str:
        return f"ColorOrder({list(self.values)})"


def orbit_canonical(
    seq: Iterable[int], group: Sequence[AffineMap], order: ColorOrder
) -> np.ndarray:
    """Lexicographically smallest image of seq under the group.

    Plain full enumeration of the group; orbit sizes are small at every
    modulus this package targets.
    """
    x = as_seq(seq)
    best = None
    best_key = None
    for sigma in group:
        y = apply(sigma, x)
        key = order.key(y)
        if best_key is None or key < best_key:
            best, best_key = y, key
    if best is None:
        raise ValueError("group must be nonempty")
    return best


def is_orbit_minimal(
    seq: Iterable[int], group: Sequence[AffineMap], order: ColorOrder
) -> bool:
    x = as_seq(seq)
    return bool((orbit_canonical(x, group, order) == x).all())
