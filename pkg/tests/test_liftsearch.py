import numpy as np
import pytest

from cwsearch.affine import apply, enumerate_group, invert, lift_affine
from cwsearch.compress import compress, fiber_size, lift_at, lift_index
from cwsearch.liftsearch import (
    ABORTED,
    EXHAUSTED,
    WITNESS_FOUND,
    Shard,
    ShardPlan,
    incremental_paf_filter,
    plan_shards,
    read_ledger,
    search_shard,
)
from cwsearch.seqcore import is_paf_zero

from known_values import B1, B2
from oracle import cw_rows


@pytest.fixture(scope="module")
def cw84_row():
    rows = cw_rows(8, 4)
    assert len(rows) > 0
    return rows[0].astype(np.int64)


def test_plan_b1_hint_36():
    plan = plan_shards(B1, 3, 36)
    assert len(plan.shards) == 36
    assert plan.prefix_positions == 2
    assert all(s.size == 6**16 for s in plan.shards)


def test_plan_b2_hint_49():
    plan = plan_shards(B2, 3, 49)
    assert len(plan.shards) == 49
    assert plan.prefix_positions == 2
    assert all(s.size == 7**14 for s in plan.shards)


def test_plan_hint_one_single_shard():
    plan = plan_shards(B2, 3, 1)
    assert len(plan.shards) == 1
    assert plan.prefix_positions == 0
    assert plan.shards[0].size == fiber_size(B2, 3)


def test_plan_sizes_sum_to_fiber():
    for B, m, hint in ((B2, 3, 49), ([1, 0, -1, 0], 2, 5), ([2, 2], 2, 100)):
        plan = plan_shards(B, m, hint)
        assert sum(s.size for s in plan.shards) == fiber_size(B, m)


def test_shards_disjointly_cover_small_fibers():
    # every fiber index appears in exactly one shard, reproduced by digits
    for B, m, hint in (([1, 0, -1, 0], 2, 4), ([0, 0, 1], 2, 2), ([1, -1, 0, 2], 2, 7)):
        plan = plan_shards(B, m, hint)
        size = fiber_size(B, m)
        assert size <= 10**6
        seen = np.zeros(size, dtype=bool)
        for shard in plan.shards:
            base = plan.shard_base(shard.shard_id)
            for local in range(shard.size):
                idx = base + local
                assert not seen[idx]
                seen[idx] = True
                assert lift_index(B, m, lift_at(B, m, idx)) == idx
        assert seen.all()


def test_search_finds_planted_witness(cw84_row):
    Bstar = compress(cw84_row, 4)
    plan = plan_shards(Bstar, 2, 1)
    out = search_shard(plan, 0)
    assert out.status == WITNESS_FOUND
    wit = np.array(out.witness)
    assert is_paf_zero(wit)
    assert (compress(wit, 4) == Bstar).all()
    assert out.last_index == lift_index(Bstar, 2, wit)


def test_search_exhausts_witness_free_fiber():
    # [3,0,0,0] is PAF-zero at d=4 but none of its 343 lifts at n=12 is
    B = [3, 0, 0, 0]
    assert is_paf_zero(np.array(B))
    plan = plan_shards(B, 3, 1)
    out = search_shard(plan, 0)
    assert out.status == EXHAUSTED
    assert out.sequences_checked == plan.shards[0].size == 343


def test_empty_shard_degenerate():
    plan = plan_shards([3, 0, 0, 0], 3, 1)
    degenerate = ShardPlan(
        B=plan.B,
        m=plan.m,
        prefix_positions=plan.prefix_positions,
        shards=(Shard(0, (), 0),),
        radices=plan.radices,
    )
    out = search_shard(degenerate, 0)
    assert out.status == EXHAUSTED
    assert out.sequences_checked == 0


def test_search_sharded_matches_unsharded(cw84_row):
    Bstar = compress(cw84_row, 4)
    single = search_shard(plan_shards(Bstar, 2, 1), 0)
    plan = plan_shards(Bstar, 2, 6)
    outcomes = [search_shard(plan, i) for i in range(len(plan.shards))]
    winners = [o for o in outcomes if o.status == WITNESS_FOUND]
    assert winners
    first = min(winners, key=lambda o: o.last_index)
    assert first.witness == single.witness
    exhausted = [o for o in outcomes if o.status == EXHAUSTED]
    for o in exhausted:
        assert o.sequences_checked == plan.shards[o.shard_id].size


def test_checkpoint_resume_counts_match(tmp_path):
    B = [3, 0, 0, 0]
    plan = plan_shards(B, 3, 1)
    straight = search_shard(plan, 0)
    ledger = tmp_path / "shard.jsonl"
    partial = search_shard(
        plan, 0, checkpoint_path=str(ledger), checkpoint_every=50, max_checked=130
    )
    assert partial.status == ABORTED
    assert partial.sequences_checked == 130
    resumed = search_shard(plan, 0, checkpoint_path=str(ledger), checkpoint_every=50)
    assert resumed.status == straight.status == EXHAUSTED
    assert resumed.sequences_checked == straight.sequences_checked == 343
    records = read_ledger(str(ledger))
    assert records[-1]["status"] == EXHAUSTED
    assert records[-1]["checked"] == 343
    # terminal records short-circuit further calls
    again = search_shard(plan, 0, checkpoint_path=str(ledger))
    assert again.status == EXHAUSTED and again.sequences_checked == 343


def test_checkpoint_resume_witness(tmp_path, cw84_row):
    Bstar = compress(cw84_row, 4)
    plan = plan_shards(Bstar, 2, 1)
    straight = search_shard(plan, 0)
    ledger = tmp_path / "shard.jsonl"
    checked = 0
    out = None
    while True:
        out = search_shard(
            plan, 0, checkpoint_path=str(ledger), checkpoint_every=7,
            max_checked=checked + 13,
        )
        if out.status != ABORTED:
            break
        checked = out.sequences_checked
    assert out.status == WITNESS_FOUND
    assert out.witness == straight.witness
    assert out.sequences_checked == straight.sequences_checked


def test_budget_abort_is_reported():
    plan = plan_shards(B2, 3, 49)
    out = search_shard(plan, 0, max_checked=1000)
    assert out.status == ABORTED
    assert out.sequences_checked == 1000


def test_filter_trivial_cases():
    from cwsearch.compress import digits_of_index

    B = [3, 0, 0, 0]
    assert incremental_paf_filter(B, 3, [])
    # fully assigned: feasible iff the lift has zero autocorrelation
    radices = [1, 7, 7, 7]
    for idx in (0, 1, 17, 342):
        x = lift_at(B, 3, idx)
        digits = digits_of_index(radices, idx)
        assert incremental_paf_filter(B, 3, digits) == is_paf_zero(x)


def test_filter_never_prunes_a_witness_prefix(cw84_row):
    from cwsearch.compress import digits_of_index

    Bstar = compress(cw84_row, 4)
    idx = lift_index(Bstar, 2, cw84_row)
    plan = plan_shards(Bstar, 2, 1)
    digits = digits_of_index(plan.radices, idx)
    for p in range(len(digits) + 1):
        assert incremental_paf_filter(Bstar, 2, digits[:p])


def test_filter_differential_on_synthetic_case(cw84_row):
    Bstar = compress(cw84_row, 4)
    plan = plan_shards(Bstar, 2, 1)
    plain = search_shard(plan, 0)
    filtered = search_shard(plan, 0, use_filter=True)
    assert plain.status == filtered.status == WITNESS_FOUND
    assert plain.witness == filtered.witness


def test_filter_differential_exhausted_case():
    plan = plan_shards([3, 0, 0, 0], 3, 1)
    plain = search_shard(plan, 0)
    filtered = search_shard(plan, 0, use_filter=True)
    assert plain.status == filtered.status == EXHAUSTED
    assert plain.sequences_checked == filtered.sequences_checked == 343


def test_filter_respects_max_checked():
    plan = plan_shards([3, 0, 0, 0], 3, 1)
    out = search_shard(plan, 0, use_filter=True, max_checked=10)
    assert out.status == ABORTED
    assert out.sequences_checked >= 10


def test_equivalence_reduction_recovers_untransformed_witness(cw84_row):
    # a witness in a transformed fiber pulls back to the base fiber
    Bstar = compress(cw84_row, 4)
    rng = np.random.default_rng(61)
    group = enumerate_group(4)
    for _ in range(5):
        sigma = group[int(rng.integers(len(group)))]
        moved = apply(sigma, Bstar)
        out = search_shard(plan_shards(moved, 2, 1), 0)
        assert out.status == WITNESS_FOUND
        lifted = lift_affine(sigma, 8)
        pulled = apply(invert(lifted), np.array(out.witness))
        assert is_paf_zero(pulled)
        assert (compress(pulled, 4) == Bstar).all()


def test_witness_is_first_in_index_order(cw84_row):
    Bstar = compress(cw84_row, 4)
    plan = plan_shards(Bstar, 2, 1)
    out = search_shard(plan, 0)
    for idx in range(out.sequences_checked - 1):
        assert not is_paf_zero(lift_at(Bstar, 2, idx))
    assert is_paf_zero(lift_at(Bstar, 2, out.sequences_checked - 1))
