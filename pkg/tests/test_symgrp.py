import itertools
import random
from math import comb, factorial

import pytest

from repbench.partitions import Partition
from repbench.symgrp import (
    GroupTooLargeError,
    Perm,
    alternating_gens,
    centralizer_order,
    conj_classes,
    enumerate_group,
    fixed_r_subsets,
    format_cycles,
    parse_cycles,
    point_stabilizer_gens,
    subsets_orbit_count_burnside,
    symmetric_gens,
    two_abelianization_dim,
)


def test_identity_cycle_type_and_sign():
    e = Perm.identity(5)
    assert e.cycle_type() == Partition((1, 1, 1, 1, 1))
    assert e.sign() == 1


def test_mixed_cycle_type_and_sign():
    g = parse_cycles("(1 2)(3 4 5)", 5)
    assert g.cycle_type() == Partition((3, 2))
    assert g.sign() == -1


def test_sign_is_multiplicative_on_random_pairs():
    rng = random.Random(41)
    for _ in range(1000):
        a = list(range(8))
        b = list(range(8))
        rng.shuffle(a)
        rng.shuffle(b)
        g, h = Perm(a), Perm(b)
        assert (g * h).sign() == g.sign() * h.sign()


def test_compose_inverse_roundtrip():
    rng = random.Random(43)
    for _ in range(50):
        a = list(range(9))
        rng.shuffle(a)
        g = Perm(a)
        assert (g * g.inverse()).is_identity()
        assert (g.inverse() * g).is_identity()


def test_cycle_string_roundtrip():
    g = parse_cycles("(1 2)(3 4 5)", 6)
    assert format_cycles(g) == "(1 2)(3 4 5)"
    assert parse_cycles("()", 4) == Perm.identity(4)


def test_conj_classes_s4_sizes():
    sizes = sorted(c.size for c in conj_classes(4, "S"))
    assert sizes == [1, 3, 6, 6, 8]
    assert sum(c.size for c in conj_classes(4, "S")) == 24


def test_conj_classes_a5_matches_classical_data():
    classes = conj_classes(5, "A")
    by_type = {c.cycle_type.parts: c for c in classes}
    assert set(by_type) == {(1, 1, 1, 1, 1), (2, 2, 1), (3, 1, 1), (5,)}
    assert by_type[(1, 1, 1, 1, 1)].size == 1
    assert by_type[(2, 2, 1)].size == 15
    assert by_type[(3, 1, 1)].size == 20
    five = by_type[(5,)]
    assert five.splits_in_Am and five.size == 12
    # Counting split classes twice recovers the group order.
    assert sum(c.size * (2 if c.splits_in_Am else 1) for c in classes) == 60


def test_class_sizes_sum_to_half_factorial_for_Am():
    for m in range(3, 14):
        classes = conj_classes(m, "A")
        total = sum(c.size * (2 if c.splits_in_Am else 1) for c in classes)
        assert total == factorial(m) // 2


def test_class_size_formula_matches_direct_count_small():
    for m in (4, 5, 6):
        all_perms = [Perm(p) for p in itertools.permutations(range(m))]
        from collections import Counter

        counts = Counter(g.cycle_type().parts for g in all_perms)
        for cls in conj_classes(m, "S"):
            assert counts[cls.cycle_type.parts] == cls.size
            assert centralizer_order(cls.cycle_type) == factorial(m) // cls.size


def test_representative_has_right_type():
    for cls in conj_classes(7, "S"):
        assert cls.representative().cycle_type() == cls.cycle_type


def test_fixed_r_subsets_identity():
    for n in (4, 7, 10):
        ct = Partition([1] * n)
        assert fixed_r_subsets(ct, 2) == comb(n, 2)


def test_fixed_r_subsets_single_cycle():
    for n in (5, 8):
        ct = Partition((n,))
        for r in range(1, n):
            assert fixed_r_subsets(ct, r) == 0
        assert fixed_r_subsets(ct, 0) == 1


def test_fixed_r_subsets_2_1_1():
    # Type (2,1,1) on 4 points fixes exactly two 2-subsets.
    assert fixed_r_subsets(Partition((2, 1, 1)), 2) == 2


def test_fixed_r_subsets_matches_direct_enumeration():
    g = parse_cycles("(1 2 3)(4 5)", 7)
    ct = g.cycle_type()
    for r in range(0, 8):
        direct = sum(
            1
            for sub in itertools.combinations(range(7), r)
            if tuple(sorted(g(i) for i in sub)) == sub
        )
        assert fixed_r_subsets(ct, r) == direct


def test_burnside_orbit_counts_are_one_for_natural_action():
    # S_m and A_m are transitive on r-subsets for r < m (and m >= 3).
    for m in range(4, 9):
        for r in range(0, m + 1):
            assert subsets_orbit_count_burnside(m, r, "S") == 1
        for r in range(0, m + 1):
            assert subsets_orbit_count_burnside(m, r, "A") == 1


def test_enumerate_group_a5():
    els = enumerate_group(alternating_gens(5))
    assert len(els) == 60
    assert two_abelianization_dim(els) == 0


def test_enumerate_group_symmetric_small():
    for m in (3, 4, 5, 6):
        assert len(enumerate_group(symmetric_gens(m))) == factorial(m)
        assert len(enumerate_group(alternating_gens(m))) == factorial(m) // 2


def test_enumerate_group_cap():
    with pytest.raises(GroupTooLargeError):
        enumerate_group(symmetric_gens(8), cap=1000)


def test_two_abelianization_c2():
    els = [Perm.identity(2), Perm((1, 0))]
    assert two_abelianization_dim(els) == 1


def test_two_abelianization_klein_four():
    els = [
        Perm.identity(4),
        parse_cycles("(1 2)(3 4)", 4),
        parse_cycles("(1 3)(2 4)", 4),
        parse_cycles("(1 4)(2 3)", 4),
    ]
    assert two_abelianization_dim(els) == 2


def test_two_abelianization_s4():
    els = enumerate_group(symmetric_gens(4))
    assert two_abelianization_dim(els) == 1


def test_point_stabilizer_natural_action():
    gens = symmetric_gens(6)
    stab, orbit = point_stabilizer_gens(gens, 0, lambda g, x: g(x))
    assert orbit == 6
    els = enumerate_group(stab)
    assert len(els) == factorial(5)
    assert all(g(0) == 0 for g in els)
