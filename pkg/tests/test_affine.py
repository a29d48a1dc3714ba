import numpy as np
import pytest

from cwsearch.affine import (
    AffineMap,
    ColorOrder,
    ModulusMismatchError,
    apply,
    compose,
    enumerate_group,
    identity,
    invert,
    is_orbit_minimal,
    lift_affine,
    orbit_canonical,
    units,
)
from cwsearch.compress import compress
from cwsearch.contents import content_of
from cwsearch.seqcore import is_paf_zero

from known_values import B1, B2
from oracle import cw_rows, random_ternary


def test_affine_map_validation():
    with pytest.raises(ValueError):
        AffineMap(2, 0, 4)  # gcd(2,4) != 1
    with pytest.raises(ValueError):
        AffineMap(1, 5, 4)  # v out of range
    AffineMap(3, 2, 4)


def test_apply_identity():
    seq = [1, -1, 0, 1, 0]
    assert apply(identity(5), seq).tolist() == seq


def test_apply_shift():
    assert apply(AffineMap(1, 1, 4), [10, 20, 30, 40]).tolist() == [40, 10, 20, 30]


def test_apply_modulus_mismatch():
    with pytest.raises(ModulusMismatchError):
        apply(AffineMap(1, 0, 5), [1, 2, 3])


def test_apply_decimation_on_b2():
    out = apply(AffineMap(3, 0, 20), B2)
    assert content_of(out, 3) == (16, 0, 0, 0, 0, 3, 1)
    assert is_paf_zero(out)


def test_compose_matrix_rule():
    # [[3,1],[0,1]] @ [[7,2],[0,1]] = [[21,8],[0,1]] -> u=1, v=7 mod 20
    sigma = AffineMap(3, 1, 20)
    tau = AffineMap(7, 2, 20)
    assert compose(sigma, tau) == AffineMap(1, 7, 20)


def test_compose_matches_action():
    rng = np.random.default_rng(3)
    for k in (12, 20, 60):
        us = units(k)
        seq = random_ternary(rng, k)
        for _ in range(20):
            s = AffineMap(int(rng.choice(us)), int(rng.integers(k)), k)
            t = AffineMap(int(rng.choice(us)), int(rng.integers(k)), k)
            lhs = apply(compose(s, t), seq)
            rhs = apply(s, apply(t, seq))
            assert (lhs == rhs).all()


def test_invert_round_trip():
    rng = np.random.default_rng(5)
    assert invert(identity(7)) == identity(7)
    for k in (12, 20, 60):
        us = units(k)
        seq = random_ternary(rng, k)
        for _ in range(34):
            s = AffineMap(int(rng.choice(us)), int(rng.integers(k)), k)
            assert compose(s, invert(s)) == identity(k)
            assert (apply(invert(s), apply(s, seq)) == seq).all()


def test_enumerate_group_sizes():
    assert len(enumerate_group(20)) == 160
    assert len(enumerate_group(60)) == 960
    assert len(enumerate_group(1)) == 1
    assert len(set(enumerate_group(20))) == 160


def test_lift_identity():
    assert lift_affine(AffineMap(1, 0, 20), 60) == AffineMap(1, 0, 60)


def test_lift_picks_smallest_unit():
    # candidates congruent to 3 mod 20 are {3, 23, 43}; 3 is not a unit mod 60
    lifted = lift_affine(AffineMap(3, 5, 20), 60)
    assert lifted == AffineMap(23, 5, 60)


def test_lift_requires_divisor():
    with pytest.raises(ValueError):
        lift_affine(AffineMap(3, 5, 20), 50)


@pytest.mark.parametrize("n,d", [(60, 20), (12, 4), (24, 8)])
def test_lift_diagram_commutes(n, d):
    # compress(lifted_sigma^{-1}(x)) == sigma^{-1}(compress(x))
    rng = np.random.default_rng(n * 100 + d)
    us = units(d)
    for _ in range(200):
        x = random_ternary(rng, n)
        sigma = AffineMap(int(rng.choice(us)), int(rng.integers(d)), d)
        lifted = lift_affine(sigma, n)
        lhs = compress(apply(invert(lifted), x), d)
        rhs = apply(invert(sigma), compress(x, d))
        assert (lhs == rhs).all()


def test_orbit_canonical_all_zero_fixed_point():
    group = enumerate_group(6)
    order = ColorOrder.default(1)
    assert orbit_canonical([0] * 6, group, order).tolist() == [0] * 6


def test_orbit_canonical_constant_on_orbit():
    group = enumerate_group(20)
    order = ColorOrder.default(3)
    rng = np.random.default_rng(9)
    for _ in range(10):
        sigma = group[int(rng.integers(len(group)))]
        moved = apply(sigma, B2)
        assert (orbit_canonical(moved, group, order) == np.array(B2)).all()


def test_orbit_canonical_idempotent():
    group = enumerate_group(12)
    order = ColorOrder.default(2)
    rng = np.random.default_rng(19)
    for _ in range(20):
        seq = rng.integers(-2, 3, size=12)
        can = orbit_canonical(seq, group, order)
        assert (orbit_canonical(can, group, order) == can).all()


def test_b1_is_its_own_canonical_form():
    group = enumerate_group(20)
    order = ColorOrder.default(3)
    assert is_orbit_minimal(B1, group, order)


def test_apply_preserves_content():
    rng = np.random.default_rng(29)
    group = enumerate_group(12)
    for _ in range(20):
        seq = rng.integers(-3, 4, size=12)
        sigma = group[int(rng.integers(len(group)))]
        assert content_of(apply(sigma, seq), 3) == content_of(seq, 3)


def test_apply_preserves_paf_zero():
    for d, rows in ((7, cw_rows(7, 4)), (8, cw_rows(8, 4))):
        group = enumerate_group(d)
        for seq in rows[:3]:
            for sigma in group:
                assert is_paf_zero(apply(sigma, np.array(seq, dtype=np.int64)))


def test_color_order_default():
    order = ColorOrder.default(3)
    assert order.values == (0, 1, -1, 2, -2, 3, -3)
    assert order.key([0, -3, 1]) == (0, 6, 1)


def test_affine_map_json_round_trip():
    sigma = AffineMap(7, 11, 20)
    assert AffineMap.from_json(sigma.to_json()) == sigma
    assert '"u": 7' in sigma.to_json() or '"u":7' in sigma.to_json().replace(" ", "")
