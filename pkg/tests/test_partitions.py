import itertools

import pytest

from repbench.partitions import (
    MullineuxSymbol,
    Partition,
    basic_spin,
    basic_spin_dim,
    conjugate,
    enumerate_partitions,
    ext2_irreducible_over_An,
    ext3_irreducible_over_An,
    format_partition,
    mullineux,
    mullineux_symbol,
    p_rim_strip,
    parse_partition,
    parse_symbol,
    partition_count,
    partition_from_symbol,
    splits_necessary_p2,
)


def brute_force_partitions(n):
    """Oracle: partitions of n via descending first-part recursion."""
    if n == 0:
        return [()]
    out = []

    def rec(rest, maxp, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, maxp), 0, -1):
            rec(rest - part, part, acc + [part])

    rec(n, n, [])
    return out


def test_enumerate_counts_match_oracle():
    for n in range(0, 12):
        got = [p.parts for p in enumerate_partitions(n)]
        assert got == brute_force_partitions(n)
        assert len(got) == partition_count(n)


def test_enumerate_n5_has_seven_partitions():
    assert len(list(enumerate_partitions(5))) == 7


def test_enumerate_2regular_n4():
    got = {p.parts for p in enumerate_partitions(4, 2)}
    assert got == {(4,), (3, 1)}


def test_enumerate_2regular_n6_matches_brute_filter():
    allparts = brute_force_partitions(6)
    assert len(allparts) == 11
    expect = {
        parts
        for parts in allparts
        if all(parts.count(v) < 2 for v in set(parts))
    }
    got = {p.parts for p in enumerate_partitions(6, 2)}
    assert got == expect == {(6,), (5, 1), (4, 2), (3, 2, 1)}


def test_rim_strip_of_hook_with_large_p():
    # Every border cell of (3,1) is removed in a single short segment.
    h, r, rest = p_rim_strip(Partition((3, 1)), 5)
    assert (h, r, rest.parts) == (4, 2, ())


def test_rim_strip_single_box():
    for p in (2, 3, 5, 7):
        h, r, rest = p_rim_strip(Partition((1,)), p)
        assert (h, r, rest.parts) == (1, 1, ())


def test_rim_strip_conserves_cells_on_two_row_family():
    for k in range(2, 10):
        lam = Partition((k + 1, k - 1))
        total = 0
        cur = lam
        while cur.parts:
            h, _, cur = p_rim_strip(cur, 2)
            total += h
        assert total == 2 * k


def test_symbol_of_hook_p5():
    sym = mullineux_symbol(Partition((3, 1)), 5)
    assert sym.columns == ((4, 2),)


def test_symbol_of_single_box_p2():
    sym = mullineux_symbol(Partition((1,)), 2)
    assert sym.columns == ((1, 1),)


def test_symbol_total_is_n_and_roundtrip_small():
    for n in range(1, 13):
        for p in (2, 3, 5):
            for lam in enumerate_partitions(n, p):
                sym = mullineux_symbol(lam, p)
                assert sym.n == n
                assert partition_from_symbol(sym) == lam


def test_roundtrip_2regular_up_to_18():
    for n in range(1, 19):
        for lam in enumerate_partitions(n, 2):
            assert partition_from_symbol(mullineux_symbol(lam, 2)) == lam


def test_invalid_symbol_rejected():
    with pytest.raises(ValueError):
        partition_from_symbol(MullineuxSymbol(((2, 2), (5, 1)), 3))


def test_mullineux_is_identity_at_p2():
    for n in range(1, 19):
        for lam in enumerate_partitions(n, 2):
            assert mullineux(lam, 2) == lam


def test_mullineux_hook_p5():
    assert mullineux(Partition((3, 1)), 5) == Partition((2, 1, 1))


def test_mullineux_equals_conjugate_for_large_p():
    # For p exceeding n every partition is p-regular and the involution
    # degenerates to diagram transposition.
    for n in range(1, 11):
        p = 11 if n < 11 else 13
        for lam in enumerate_partitions(n):
            assert mullineux(lam, p) == conjugate(lam)


def test_mullineux_involution_all_p():
    for p in (2, 3, 5, 7):
        for n in range(1, 15):
            for lam in enumerate_partitions(n, p):
                assert mullineux(mullineux(lam, p), p) == lam


def test_mullineux_preserves_symbol_top_row():
    for p in (3, 5):
        for lam in enumerate_partitions(12, p):
            top = [h for h, _ in mullineux_symbol(lam, p).columns]
            twisted = [h for h, _ in mullineux_symbol(mullineux(lam, p), p).columns]
            assert top == twisted


def test_conjugate_basics():
    assert conjugate(Partition((3, 1))) == Partition((2, 1, 1))
    assert conjugate(Partition((5,))) == Partition((1, 1, 1, 1, 1))
    for n in range(0, 19, 3):
        for lam in itertools.islice(enumerate_partitions(n), 40):
            assert conjugate(conjugate(lam)) == lam


def test_basic_spin_partition_and_dim():
    assert basic_spin(6) == Partition((4, 2))
    assert basic_spin_dim(6) == 4
    assert basic_spin(7) == Partition((4, 3))
    assert basic_spin_dim(7) == 8
    assert basic_spin(2) == Partition((2,))
    assert basic_spin_dim(2) == 1


def test_splits_necessary_p2():
    assert splits_necessary_p2(Partition((5, 4, 1)))
    assert not splits_necessary_p2(Partition((7, 1)))
    for n in range(2, 12):
        assert not splits_necessary_p2(Partition((n,)))


def test_ext2_examples():
    assert ext2_irreducible_over_An(Partition((11, 1)), 3)
    assert mullineux(Partition((11, 1)), 3) != Partition((11, 1))
    assert not ext2_irreducible_over_An(Partition((4, 4, 4)), 3)
    with pytest.raises(ValueError):
        ext2_irreducible_over_An(Partition((3, 1)), 2)


def test_ext_criteria_imply_not_fixed_by_involution():
    # Brute battery: any partition passing either criterion moves under
    # the involution.
    hits = 0
    for p in (3, 5):
        for n in range(1, 15):
            for lam in enumerate_partitions(n, p):
                e2 = ext2_irreducible_over_An(lam, p)
                e3 = ext3_irreducible_over_An(lam, p)
                if e2 or e3:
                    hits += 1
                    assert mullineux(lam, p) != lam, (lam, p, e2, e3)
    assert hits > 50


def test_serialization_roundtrip():
    lam = Partition((5, 4, 1))
    assert format_partition(lam) == "5,4,1"
    assert parse_partition("5,4,1") == lam
    assert parse_partition("") == Partition(())
    sym = mullineux_symbol(lam, 3)
    assert parse_symbol(str(sym), 3) == sym


def test_invalid_partition_rejected():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((3, -1))
