"""End-to-end existence / nonexistence runs.

A run reproduces the proof schema at configurable scale: fix the positive
row sum a = sqrt(w), derive the entry counts, enumerate every feasible
content of the compressed candidates, generate the zero-autocorrelation
orbit representatives of each content, and exhaustively scan each
representative's compression preimage.  The verdict is EXISTS with a
verified witness, NOT_EXISTS when every fiber of every representative is
exhausted, or INCONCLUSIVE when a budget ran out first (progress stays in
the ledger for resumption).
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field

import numpy as np

from . import canon, liftsearch
from .contents import solve_content_system
from .liftsearch import (
    ABORTED,
    EXHAUSTED,
    WITNESS_FOUND,
    SearchOutcome,
    ShardPlan,
    plan_shards,
    search_shard,
)
from .seqcore import NonSquareWeightError, verify_cw, verify_cw_matrix
from .compress import compress, fiber_size

EXISTS = "EXISTS"
NOT_EXISTS = "NOT_EXISTS"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class PipelineConfig:
    shard_hint: int = 1
    workers: int = 1
    wall_budget: float | None = None
    max_checked_per_shard: int | None = None
    checkpoint_dir: str | None = None
    checkpoint_every: int = liftsearch.DEFAULT_CHECKPOINT_EVERY
    use_filter: bool = False


@dataclass
class RunResult:
    verdict: str
    witness: tuple[int, ...] | None
    manifest: dict
    records: list[dict] = field(default_factory=list)


def cw_stats(n: int, w: int) -> dict:
    """Entry counts of a candidate first row with positive row sum."""
    a = math.isqrt(w)
    if a * a != w:
        raise NonSquareWeightError(f"weight {w} is not a perfect square")
    return {"a": a, "p": n - w, "q": (w + a) // 2, "r": (w - a) // 2}


def _validate(n: int, w: int, m: int) -> int:
    if n < 1 or w < 1 or m < 1:
        raise ValueError("n, w, m must be >= 1")
    if w > n:
        raise ValueError(f"weight {w} exceeds order {n}")
    if n % m != 0:
        raise ValueError(f"compression factor {m} does not divide {n}")
    a = math.isqrt(w)
    if a * a != w:
        raise NonSquareWeightError(f"weight {w} is not a perfect square")
    return a


def run_nonexistence(
    n: int, w: int, m: int, config: PipelineConfig | None = None
) -> RunResult:
    """Decide existence of a valid first row of order n and weight w by
    searching compressed candidates of length n/m."""
    cfg = config or PipelineConfig()
    a = _validate(n, w, m)
    d = n // m
    stats = cw_stats(n, w)
    deadline = (
        time.monotonic() + cfg.wall_budget if cfg.wall_budget is not None else None
    )
    contents_list = solve_content_system(d, w, a, m)
    manifest: dict = {
        "n": n,
        "w": w,
        "m": m,
        "a": a,  # sign normalization: the row sum is fixed positive
        "stats": {k: stats[k] for k in ("p", "q", "r")},
        "contents_count": len(contents_list),
        "bracelets": [],
        "shard_plans": [],
        "verdict": INCONCLUSIVE,
    }
    records: list[dict] = []
    witness: tuple[int, ...] | None = None
    ran_out = False

    def remaining() -> float | None:
        if deadline is None:
            return None
        return deadline - time.monotonic()

    bracelet_index = 0
    for mu in contents_list:
        left = remaining()
        if left is not None and left <= 0:
            ran_out = True
            break
        try:
            reps = canon.paf_zero_bracelets(mu, deadline=deadline)
        except canon.BudgetExceeded:
            ran_out = True
            break
        for rep in reps:
            manifest["bracelets"].append(
                {"content": list(mu), "bracelet": [int(v) for v in rep]}
            )
            plan = plan_shards(rep, m, cfg.shard_hint)
            manifest["shard_plans"].append(
                {
                    "bracelet_index": bracelet_index,
                    "shards": len(plan.shards),
                    "prefix_positions": plan.prefix_positions,
                    "shard_size": plan.shards[0].size if plan.shards else 0,
                    "fiber_size": plan.fiber_size,
                }
            )
            outcomes = _search_fiber(plan, bracelet_index, cfg, remaining())
            for out in outcomes:
                rec = out.to_record()
                rec["bracelet_index"] = bracelet_index
                records.append(rec)
            for out in outcomes:
                if out.status == WITNESS_FOUND:
                    witness = out.witness
                elif out.status == ABORTED:
                    ran_out = True
            bracelet_index += 1
            if witness is not None or ran_out:
                break
        if witness is not None or ran_out:
            break

    if witness is not None:
        seq = np.array(witness, dtype=np.int64)
        if not (verify_cw(seq, w) and verify_cw_matrix(seq, w)):
            raise RuntimeError("witness failed final verification")
        manifest["verdict"] = EXISTS
        manifest["witness"] = list(witness)
    elif ran_out:
        manifest["verdict"] = INCONCLUSIVE
    else:
        manifest["verdict"] = NOT_EXISTS

    if cfg.checkpoint_dir:
        os.makedirs(cfg.checkpoint_dir, exist_ok=True)
        with open(os.path.join(cfg.checkpoint_dir, "manifest.json"), "w") as fh:
            json.dump(manifest, fh, indent=1)
    return RunResult(manifest["verdict"], witness, manifest, records)


def _search_fiber(
    plan: ShardPlan,
    bracelet_index: int,
    cfg: PipelineConfig,
    budget_left: float | None,
) -> list[SearchOutcome]:
    """Run every shard of one fiber on a bounded worker pool."""
    ledger = None
    if cfg.checkpoint_dir:
        os.makedirs(cfg.checkpoint_dir, exist_ok=True)
        ledger = os.path.join(
            cfg.checkpoint_dir, f"bracelet{bracelet_index:03d}.jsonl"
        )
    start = time.monotonic()

    def shard_budget() -> float | None:
        if budget_left is None:
            return None
        return max(0.01, budget_left - (time.monotonic() - start))

    def run_one(shard_id: int) -> SearchOutcome:
        return search_shard(
            plan,
            shard_id,
            checkpoint_path=ledger,
            checkpoint_every=cfg.checkpoint_every,
            max_checked=cfg.max_checked_per_shard,
            wall_budget=shard_budget(),
            use_filter=cfg.use_filter,
        )

    outcomes: list[SearchOutcome] = []
    if cfg.workers <= 1:
        for sid in range(len(plan.shards)):
            out = run_one(sid)
            outcomes.append(out)
            if out.status == WITNESS_FOUND:
                break
            if (
                budget_left is not None
                and shard_budget() <= 0.01
                and sid + 1 < len(plan.shards)
            ):
                # budget gone with shards left: mark the run incomplete
                outcomes.append(
                    SearchOutcome(sid + 1, liftsearch.ABORTED, None, 0, 0.0)
                )
                break
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            pending = {pool.submit(run_one, sid) for sid in range(len(plan.shards))}
            stop = False
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in done:
                    out = fut.result()
                    outcomes.append(out)
                    if out.status == WITNESS_FOUND:
                        stop = True
                if stop:
                    for fut in pending:
                        fut.cancel()
                    pending = {f for f in pending if not f.cancel() and not f.done()}
                    break
        outcomes.sort(key=lambda o: o.shard_id)
    return outcomes


def verify_ledger(manifest: dict, records: list[dict]) -> tuple[bool, str]:
    """Consistency check of a completed run's manifest plus shard records.

    Returns (True, "") or (False, first failing condition).  Regenerates
    the content list and the bracelet sets, checks that each searched
    fiber is fully covered by terminal shard outcomes, and re-verifies any
    witness.
    """
    n, w, m = manifest["n"], manifest["w"], manifest["m"]
    a = _validate(n, w, m)
    d = n // m
    contents_list = solve_content_system(d, w, a, m)
    if manifest.get("contents_count") != len(contents_list):
        return False, "contents count mismatch"

    listed = [
        (tuple(entry["content"]), tuple(entry["bracelet"]))
        for entry in manifest.get("bracelets", [])
    ]
    verdict = manifest.get("verdict")
    if verdict == NOT_EXISTS:
        expected: list[tuple[tuple, tuple]] = []
        for mu in contents_list:
            for rep in canon.paf_zero_bracelets(mu):
                expected.append((tuple(mu), tuple(int(v) for v in rep)))
        if listed != expected:
            return False, "bracelet set mismatch"
    else:
        # Partial runs list a prefix of the full bracelet sequence.
        for mu, rep in listed:
            regen = [tuple(int(v) for v in r) for r in canon.paf_zero_bracelets(mu)]
            if rep not in regen:
                return False, "bracelet set mismatch"

    by_bracelet: dict[int, dict[int, dict]] = {}
    for rec in records:
        by_bracelet.setdefault(rec["bracelet_index"], {})[rec["shard_id"]] = rec

    witness_seen = False
    for bi, (mu, rep) in enumerate(listed):
        shard_recs = by_bracelet.get(bi, {})
        plan_entry = next(
            (p for p in manifest.get("shard_plans", []) if p["bracelet_index"] == bi),
            None,
        )
        if plan_entry is None:
            return False, "incomplete cover"
        for rec in shard_recs.values():
            if rec["status"] not in (EXHAUSTED, WITNESS_FOUND):
                return False, "non-terminal shard status"
            if "witness" in rec:
                witness_seen = True
                wit = np.array(rec["witness"], dtype=np.int64)
                try:
                    ok = verify_cw(wit, w)
                except NonSquareWeightError:
                    ok = False
                if not ok:
                    return False, "witness fails PAF check"
                if tuple(int(v) for v in compress(wit, d)) != rep:
                    return False, "witness outside its fiber"
        if verdict == NOT_EXISTS:
            total = fiber_size(rep, m)
            if len(shard_recs) != plan_entry["shards"]:
                return False, "incomplete cover"
            covered = sum(rec["checked"] for rec in shard_recs.values())
            if covered != total:
                return False, "incomplete cover"
    if verdict == EXISTS and not witness_seen:
        return False, "verdict inconsistent with outcomes"
    if verdict == NOT_EXISTS and witness_seen:
        return False, "verdict inconsistent with outcomes"
    return True, ""
