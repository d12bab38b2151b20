import numpy as np
import pytest

from repbench.gf2 import BitMatrix, Subspace, subspace_meet, subspace_sum


def naive_rank(mat):
    """Independent oracle: list-of-list elimination, no packing, no numpy."""
    m = [list(map(int, row)) for row in mat]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if m[r][c] % 2 == 1:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rows):
            if r != rank and m[r][c] % 2 == 1:
                m[r] = [(a + b) % 2 for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def test_rank_zero_matrix():
    assert BitMatrix.zeros(3, 3).rank() == 0


def test_rank_identity():
    assert BitMatrix.identity(5).rank() == 5


def test_rank_matches_naive_oracle():
    rng = np.random.default_rng(7)
    for _ in range(25):
        m = rng.integers(0, 2, size=(20, 20), dtype=np.uint8)
        assert BitMatrix.from_dense(m).rank() == naive_rank(m)


def test_rank_rectangular_and_wide():
    rng = np.random.default_rng(11)
    for shape in [(5, 40), (40, 5), (30, 70), (70, 30), (1, 1)]:
        m = rng.integers(0, 2, size=shape, dtype=np.uint8)
        assert BitMatrix.from_dense(m).rank() == naive_rank(m)


def test_rank_plus_nullity_is_cols():
    rng = np.random.default_rng(3)
    for _ in range(10):
        m = rng.integers(0, 2, size=(17, 23), dtype=np.uint8)
        bm = BitMatrix.from_dense(m)
        assert bm.rank() + bm.nullspace().dim == bm.cols


def test_rank_equals_rank_of_transpose():
    rng = np.random.default_rng(5)
    for _ in range(10):
        m = rng.integers(0, 2, size=(15, 31), dtype=np.uint8)
        bm = BitMatrix.from_dense(m)
        assert bm.rank() == bm.transpose().rank()


def test_elimination_deterministic():
    rng = np.random.default_rng(13)
    m = rng.integers(0, 2, size=(25, 25), dtype=np.uint8)
    a, pa = BitMatrix.from_dense(m).rref()
    b, pb = BitMatrix.from_dense(m).rref()
    assert pa == pb
    assert a == b


def test_nullspace_identity_is_zero():
    assert BitMatrix.identity(6).nullspace().dim == 0


def test_nullspace_all_ones_row_is_parity_kernel():
    m = BitMatrix.from_dense(np.ones((1, 4), dtype=np.uint8))
    ns = m.nullspace()
    assert ns.dim == 3
    for i in range(ns.dim):
        assert ns.basis.row_dense(i).sum() % 2 == 0


def test_nullspace_vectors_are_in_kernel():
    rng = np.random.default_rng(17)
    m = rng.integers(0, 2, size=(12, 20), dtype=np.uint8)
    bm = BitMatrix.from_dense(m)
    ns = bm.nullspace()
    for i in range(ns.dim):
        assert not bm.apply(ns.basis.row_dense(i)).any()


def test_matmul_matches_dense():
    rng = np.random.default_rng(19)
    a = rng.integers(0, 2, size=(9, 14), dtype=np.uint8)
    b = rng.integers(0, 2, size=(14, 11), dtype=np.uint8)
    prod = BitMatrix.from_dense(a) @ BitMatrix.from_dense(b)
    assert np.array_equal(prod.to_dense(), (a.astype(int) @ b.astype(int)) % 2)


def test_apply_matches_dense():
    rng = np.random.default_rng(23)
    a = rng.integers(0, 2, size=(9, 70), dtype=np.uint8)
    v = rng.integers(0, 2, size=70, dtype=np.uint8)
    got = BitMatrix.from_dense(a).apply(v)
    assert np.array_equal(got, (a.astype(int) @ v.astype(int)) % 2)


def test_solve_identity_returns_rhs():
    b = np.array([1, 0, 1, 1, 0], dtype=np.uint8)
    x = BitMatrix.identity(5).solve(b)
    assert np.array_equal(x, b)


def test_solve_consistency_and_failure():
    rng = np.random.default_rng(29)
    a = rng.integers(0, 2, size=(8, 5), dtype=np.uint8)
    bm = BitMatrix.from_dense(a)
    x0 = rng.integers(0, 2, size=5, dtype=np.uint8)
    b = bm.apply(x0)
    x = bm.solve(b)
    assert x is not None
    assert np.array_equal(bm.apply(x), b)
    # A rhs outside the column space must be rejected.
    full = BitMatrix.from_dense(np.zeros((3, 2), dtype=np.uint8))
    assert full.solve(np.array([1, 0, 0], dtype=np.uint8)) is None


def _random_subspace(rng, ambient, gens):
    m = rng.integers(0, 2, size=(gens, ambient), dtype=np.uint8)
    return Subspace.from_generators(BitMatrix.from_dense(m))


def test_meet_with_self_and_sum_with_zero():
    rng = np.random.default_rng(31)
    u = _random_subspace(rng, 12, 5)
    assert subspace_meet(u, u) == u
    assert subspace_sum(u, Subspace.zero(12)) == u


def test_modular_dimension_law_on_random_instances():
    rng = np.random.default_rng(37)
    for _ in range(20):
        u = _random_subspace(rng, 30, rng.integers(1, 18))
        v = _random_subspace(rng, 30, rng.integers(1, 18))
        s = subspace_sum(u, v)
        m = subspace_meet(u, v)
        assert u.dim + v.dim == s.dim + m.dim
        # The meet is inside both constituents, the sum contains both.
        assert u.contains_space(m) and v.contains_space(m)
        assert s.contains_space(u) and s.contains_space(v)


def test_meet_mismatched_ambient_raises():
    with pytest.raises(ValueError):
        subspace_meet(Subspace.zero(3), Subspace.zero(4))


def test_contains_and_reduce():
    basis = BitMatrix.from_dense(np.array([[1, 1, 0, 0], [0, 0, 1, 1]], dtype=np.uint8))
    u = Subspace.from_generators(basis)
    assert u.contains(np.array([1, 1, 1, 1], dtype=np.uint8))
    assert not u.contains(np.array([1, 0, 0, 0], dtype=np.uint8))


def test_immutability():
    m = BitMatrix.identity(4)
    with pytest.raises(ValueError):
        m.data[0, 0] = 0
