import time

import numpy as np
import pytest

from cwsearch import canon
from cwsearch.affine import AffineMap, ColorOrder, apply, enumerate_group, orbit_canonical
from cwsearch.canon import BudgetExceeded, arrangement_count, bracelets, paf_zero_bracelets
from cwsearch.contents import content_of
from cwsearch.seqcore import is_paf_zero

from known_values import B2, B3, CONTENT_B2, X5
from oracle import content_arrangements


def test_single_orbit_content():
    assert [r.tolist() for r in bracelets([5, 0, 0])] == [[0, 0, 0, 0, 0]]


def test_all_zero_content_is_paf_zero():
    # the all-zero sequence has zero autocorrelation at every shift, so it
    # is returned; such contents never solve the weight equation upstream
    assert [r.tolist() for r in paf_zero_bracelets([4, 0, 0])] == [[0, 0, 0, 0]]


def test_small_content_matches_filter_all_oracle():
    got = [tuple(int(v) for v in r) for r in bracelets([0, 3, 1])]
    group = enumerate_group(4)
    order = ColorOrder.default(1)
    expected = set()
    for arr in content_arrangements((0, 3, 1)):
        expected.add(tuple(int(v) for v in orbit_canonical(np.array(arr), group, order)))
    assert set(got) == expected
    assert got == [(1, 1, 1, -1)]


@pytest.mark.parametrize(
    "mu",
    [
        (0, 3, 1),
        (2, 2, 2),
        (1, 2, 1, 1, 0),
        (3, 1, 0, 0, 2),
        (2, 2, 1, 2, 1),
        (4, 2, 2),
    ],
)
def test_orbit_union_covers_all_arrangements(mu):
    d = sum(mu)
    m = (len(mu) - 1) // 2
    group = enumerate_group(d)
    order = ColorOrder.default(m)
    reps = [tuple(int(v) for v in r) for r in bracelets(mu)]
    assert len(reps) == len(set(reps))
    all_arrangements = {tuple(a) for a in content_arrangements(mu)}
    covered = set()
    for rep in reps:
        arr = np.array(rep)
        # minimality of the emitted representative
        assert (orbit_canonical(arr, group, order) == arr).all()
        assert content_of(arr, m) == tuple(mu)
        for sigma in group:
            covered.add(tuple(int(v) for v in apply(sigma, arr)))
    assert covered == all_arrangements
    # exactly one representative per orbit
    canon_of_all = {
        tuple(int(v) for v in orbit_canonical(np.array(a), group, order))
        for a in all_arrangements
    }
    assert set(reps) == canon_of_all


def test_emission_order_is_lexicographic():
    order = ColorOrder.default(2)
    reps = [order.key(r) for r in bracelets((2, 2, 1, 2, 1))]
    assert reps == sorted(reps)


def test_cheap_content_stream_contains_published_representatives():
    reps = [tuple(int(v) for v in r) for r in bracelets(CONTENT_B2)]
    assert tuple(B2) in reps
    assert tuple(B3) in reps
    assert len(reps) == 142


def test_cheap_content_paf_zero_set():
    got = [list(map(int, r)) for r in paf_zero_bracelets(CONTENT_B2)]
    assert got == [B2, B3, X5]


def test_paf_zero_subset_of_stream():
    zero = {tuple(int(v) for v in r) for r in paf_zero_bracelets(CONTENT_B2)}
    full = {tuple(int(v) for v in r) for r in bracelets(CONTENT_B2)}
    assert zero <= full
    for rep in full:
        assert (tuple(rep) in zero) == is_paf_zero(np.array(rep))


def test_generic_group_path():
    # a subgroup without all rotations exercises the filter-all fallback
    group = [AffineMap(1, 0, 4), AffineMap(1, 2, 4)]
    got = {tuple(int(v) for v in r) for r in bracelets([0, 3, 1], group=group)}
    order = ColorOrder.default(1)
    expected = {
        tuple(int(v) for v in orbit_canonical(np.array(a), group, order))
        for a in content_arrangements((0, 3, 1))
    }
    assert got == expected
    assert len(got) == 2  # half-shift only: two orbits of the four shifts


def test_group_modulus_validated():
    with pytest.raises(ValueError):
        list(bracelets([0, 3, 1], group=enumerate_group(5)))


def test_deadline_raises_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        list(bracelets((0, 9, 9, 0, 0, 2, 0), deadline=time.monotonic() - 1))


def test_arrangement_count():
    assert arrangement_count(CONTENT_B2) == 19380
    assert arrangement_count((0, 9, 9, 0, 0, 2, 0)) == 9237800


def test_chunk_overflow_splits_subtrees(monkeypatch):
    mu = (2, 2, 1, 2, 1)
    expected = [tuple(int(v) for v in r) for r in bracelets(mu)]
    assert len(expected) > 4
    monkeypatch.setattr(canon, "_CHUNK_CAP", 2)  # force subtree splitting
    got = [tuple(int(v) for v in r) for r in bracelets(mu)]
    assert got == expected


def test_stream_is_lazy():
    gen = bracelets(CONTENT_B2)
    first = next(gen)  # pulls one chunk, not the whole space
    group = enumerate_group(20)
    order = ColorOrder.default(3)
    assert (orbit_canonical(first, group, order) == first).all()
    gen.close()
