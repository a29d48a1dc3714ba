"""Sharded exhaustive search of a compression preimage for a
zero-autocorrelation ternary sequence.

A fiber (all ternary length-n sequences compressing to a fixed B) is a
mixed-radix product over positions.  A plan fixes the digits of the
leading positions, one shard per combination; shards are disjoint, cover
the fiber, and can be scanned independently, checkpointed, and resumed.
Checks are exact integer arithmetic throughout; every reported witness is
re-verified before being returned.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import backend
from .compress import (
    compress,
    digits_of_index,
    fiber_size,
    fiber_table,
    index_of_digits,
    lift_digits,
)
from .seqcore import as_seq, is_paf_zero

DEFAULT_CHECKPOINT_EVERY = 10_000_000

EXHAUSTED = "exhausted"
WITNESS_FOUND = "witness_found"
ABORTED = "aborted"
RUNNING = "running"


@dataclass(frozen=True)
class Shard:
    shard_id: int
    fixed_digits: tuple[int, ...]
    size: int


@dataclass(frozen=True)
class ShardPlan:
    B: tuple[int, ...]
    m: int
    prefix_positions: int
    shards: tuple[Shard, ...]
    radices: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.B) * self.m

    @property
    def fiber_size(self) -> int:
        return fiber_size(self.B, self.m)

    def shard_base(self, shard_id: int) -> int:
        """Global fiber index of the first candidate of a shard."""
        shard = self.shards[shard_id]
        digits = list(shard.fixed_digits) + [0] * (len(self.B) - self.prefix_positions)
        return index_of_digits(self.radices, digits)


@dataclass
class SearchOutcome:
    shard_id: int
    status: str
    witness: tuple[int, ...] | None
    sequences_checked: int
    elapsed: float
    last_index: int | None = None

    def to_record(self) -> dict:
        rec = {
            "shard_id": self.shard_id,
            "last_index": self.last_index,
            "status": self.status,
            "checked": self.sequences_checked,
            "wall_seconds": round(self.elapsed, 3),
        }
        if self.witness is not None:
            rec["witness"] = list(self.witness)
        return rec


def plan_shards(B: Iterable[int], m: int, shard_count_hint: int = 1) -> ShardPlan:
    """Split a fiber by fixing the fewest leading positions whose digit
    combinations number at least the hint; one shard per combination."""
    arr = as_seq(B)
    if shard_count_hint < 1:
        raise ValueError("shard_count_hint must be >= 1")
    table = fiber_table(m)
    if int(np.abs(arr).max(initial=0)) > m:
        raise ValueError(f"entry bound exceeds factor {m}")
    radices = tuple(table.count(int(b)) for b in arr)
    d = len(radices)
    prefix = 0
    combos = 1
    while combos < shard_count_hint and prefix < d:
        combos *= radices[prefix]
        prefix += 1
    if combos > 10**7:
        raise ValueError(f"plan would materialize {combos} shards; use a smaller hint")
    subsize = 1
    for r in radices[prefix:]:
        subsize *= r
    shards = tuple(
        Shard(i, tuple(digits_of_index(radices[:prefix], i)), subsize)
        for i in range(combos)
    )
    return ShardPlan(
        B=tuple(int(b) for b in arr),
        m=m,
        prefix_positions=prefix,
        shards=shards,
        radices=radices,
    )


def append_ledger(path: str, record: dict) -> None:
    with open(path, "a") as fh:
        fh.write(json.dumps(record) + "\n")


def read_ledger(path: str) -> list[dict]:
    if not os.path.exists(path):
        return []
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _last_shard_record(records: list[dict], shard_id: int) -> dict | None:
    for rec in reversed(records):
        if rec.get("shard_id") == shard_id:
            return rec
    return None


def _verify_witness(plan: ShardPlan, witness: np.ndarray) -> None:
    seq = as_seq(witness)
    if not is_paf_zero(seq):
        raise RuntimeError("scan returned a non-PAF-zero witness")
    if tuple(int(v) for v in compress(seq, len(plan.B))) != plan.B:
        raise RuntimeError("scan returned a witness outside the fiber")


def search_shard(
    plan: ShardPlan,
    shard_id: int,
    *,
    checkpoint_path: str | None = None,
    checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY,
    max_checked: int | None = None,
    wall_budget: float | None = None,
    use_filter: bool = False,
) -> SearchOutcome:
    """Scan one shard for a zero-autocorrelation ternary preimage.

    Visits the shard's candidates in fiber-index order and returns the
    first witness, or exhausted.  With a checkpoint path, progress is
    appended to the JSONL ledger every `checkpoint_every` candidates and a
    previous run of the same shard is resumed (terminal outcomes are
    returned as recorded).  Budget stops and interrupts report `aborted`,
    never a silent partial result.
    """
    if not 0 <= shard_id < len(plan.shards):
        raise ValueError(f"shard_id {shard_id} out of range")
    shard = plan.shards[shard_id]
    if use_filter:
        return _search_shard_filtered(
            plan, shard_id, checkpoint_path, max_checked, wall_budget
        )
    d = len(plan.B)
    base = plan.shard_base(shard_id) if shard.size else 0
    checked = 0  # cumulative over resumes; candidate k of the shard is index base+k
    elapsed_before = 0.0
    if checkpoint_path:
        rec = _last_shard_record(read_ledger(checkpoint_path), shard_id)
        if rec is not None:
            if rec["status"] in (EXHAUSTED, WITNESS_FOUND):
                return SearchOutcome(
                    shard_id=shard_id,
                    status=rec["status"],
                    witness=tuple(rec["witness"]) if "witness" in rec else None,
                    sequences_checked=rec["checked"],
                    elapsed=rec["wall_seconds"],
                    last_index=rec["last_index"],
                )
            # running or aborted records resume where they stopped
            checked = rec["checked"]
            elapsed_before = rec["wall_seconds"]

    def outcome_at(status: str, witness: tuple[int, ...] | None, wall: float) -> SearchOutcome:
        return SearchOutcome(
            shard_id, status, witness, checked, wall,
            last_index=base + checked - 1 if checked > 0 else None,
        )

    if shard.size == 0 or checked >= shard.size:
        out = outcome_at(EXHAUSTED, None, elapsed_before)
        if checkpoint_path and shard.size > 0:
            append_ledger(checkpoint_path, out.to_record())
        return out

    table = fiber_table(plan.m)
    bidx = np.array([b + plan.m for b in plan.B], dtype=np.int64)
    digit_arr = np.array(digits_of_index(plan.radices, base + checked), dtype=np.int64)
    start = time.monotonic()

    def wall() -> float:
        return elapsed_before + (time.monotonic() - start)

    try:
        while True:
            block = shard.size - checked
            if max_checked is not None:
                block = min(block, max_checked - checked)
            block = min(block, checkpoint_every)
            if block <= 0:
                out = outcome_at(ABORTED, None, wall())
                break
            found, nchecked, wrapped, witness = backend.kernels.scan_fiber(
                table.tuple_array,
                bidx,
                table.sizes,
                digit_arr,
                plan.prefix_positions,
                np.int64(block),
            )
            checked += int(nchecked)
            if found:
                _verify_witness(plan, witness)
                out = outcome_at(
                    WITNESS_FOUND, tuple(int(v) for v in witness), wall()
                )
                break
            if wrapped or checked >= shard.size:
                out = outcome_at(EXHAUSTED, None, wall())
                break
            if wall_budget is not None and wall() - elapsed_before > wall_budget:
                out = outcome_at(ABORTED, None, wall())
                break
            if checkpoint_path:
                append_ledger(
                    checkpoint_path, outcome_at(RUNNING, None, wall()).to_record()
                )
    except KeyboardInterrupt:
        out = outcome_at(ABORTED, None, wall())
        if checkpoint_path:
            append_ledger(checkpoint_path, out.to_record())
        raise
    if checkpoint_path:
        append_ledger(checkpoint_path, out.to_record())
    return out


def incremental_paf_filter(B: Iterable[int], m: int, digits: Sequence[int]) -> bool:
    """Feasibility of a partial lift: False only when no completion of the
    assigned fiber positions can reach zero periodic autocorrelation.

    Positions 0..len(digits)-1 of the fiber are assigned; for each shift,
    the contribution of fully-fixed index pairs is compared against the
    largest magnitude the remaining pairs could contribute (one each).
    Sound by construction: a true witness is never pruned.
    """
    arr = as_seq(B)
    d = arr.shape[0]
    p = len(digits)
    if p > d:
        raise ValueError("more digits than positions")
    if p == 0:
        return True
    n = d * m
    table = fiber_table(m)
    fixed = np.zeros(n, dtype=np.int64)
    known = np.zeros(n, dtype=bool)
    for j in range(p):
        tup = table.tuples_for(int(arr[j]))[digits[j]]
        for k in range(m):
            fixed[j + k * d] = tup[k]
            known[j + k * d] = True
    for s in range(1, n):
        shifted_known = np.roll(known, -s)
        both = known & shifted_known
        fixed_part = int(np.dot(fixed[both], np.roll(fixed, -s)[both]))
        free_pairs = n - int(both.sum())
        if abs(fixed_part) > free_pairs:
            return False
    return True


def _search_shard_filtered(
    plan: ShardPlan,
    shard_id: int,
    checkpoint_path: str | None,
    max_checked: int | None,
    wall_budget: float | None,
) -> SearchOutcome:
    """Depth-first shard scan gated by the incremental feasibility filter.

    Subtrees the filter excludes are counted into sequences_checked (they
    are soundly eliminated), so exhausted outcomes still account for the
    full shard size and agree with the plain scan.  Intended for small
    fibers and differential testing; it does not checkpoint mid-run.
    """
    shard = plan.shards[shard_id]
    d = len(plan.B)
    lo = plan.prefix_positions
    base = plan.shard_base(shard_id) if shard.size else 0
    start = time.monotonic()
    digits = list(shard.fixed_digits) + [0] * (d - lo)
    suffix_sizes = [1] * (d + 1)
    for j in range(d - 1, -1, -1):
        suffix_sizes[j] = suffix_sizes[j + 1] * plan.radices[j]
    checked = 0  # pruned subtrees count as checked: the scan order stays contiguous
    witness: np.ndarray | None = None
    aborted = False

    def over_budget() -> bool:
        if max_checked is not None and checked >= max_checked:
            return True
        return wall_budget is not None and time.monotonic() - start > wall_budget

    def rec(j: int) -> bool:
        nonlocal checked, witness, aborted
        if over_budget():
            aborted = True
            return True
        if j == d:
            x = lift_digits(plan.B, plan.m, digits)
            checked += 1
            if is_paf_zero(x):
                witness = x
                return True
            return False
        if not incremental_paf_filter(plan.B, plan.m, digits[:j]):
            checked += suffix_sizes[j]
            return False
        for dig in range(plan.radices[j]):
            digits[j] = dig
            if rec(j + 1):
                return True
        digits[j] = 0
        return False

    found = shard.size > 0 and rec(lo) and not aborted
    elapsed = time.monotonic() - start
    if found and witness is not None:
        _verify_witness(plan, witness)
        outcome = SearchOutcome(
            shard_id, WITNESS_FOUND, tuple(int(v) for v in witness),
            checked, elapsed, last_index=index_of_digits(plan.radices, digits),
        )
    elif aborted:
        outcome = SearchOutcome(
            shard_id, ABORTED, None, checked, elapsed,
            last_index=base + checked - 1 if checked else None,
        )
    else:
        outcome = SearchOutcome(
            shard_id, EXHAUSTED, None, checked, elapsed,
            last_index=base + shard.size - 1 if shard.size else None,
        )
    if checkpoint_path:
        append_ledger(checkpoint_path, outcome.to_record())
    return outcome
