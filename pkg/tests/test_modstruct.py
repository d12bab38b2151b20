import numpy as np
import pytest

from repbench.partitions import Partition, basic_spin, enumerate_partitions
from repbench.permmod import perm_module, simple_head
from repbench.modstruct import (
    IncompleteSimplesError,
    branching_battery,
    chop,
    d_r,
    fixed_points,
    hom_dimension_battery,
    hom_from_simple,
    hom_space,
    is_irreducible,
    is_isomorphic,
    module_is_trivial,
    restriction_module,
    socle_series_wrt,
    socle_wrt,
    standard_simples,
    structure_battery,
    battery_claims_pass,
    trivial_module,
    young_subgroup_perms,
)
from repbench.symgrp import Perm


def test_hom_triv_triv():
    t = trivial_module(["s", "c"])
    assert hom_space(t, t).dim == 1


def test_hom_m1_m3_is_two_for_even_n():
    for n in (8, 10):
        assert hom_space(perm_module(n, 1), perm_module(n, 3)).dim == 2


def test_hom_d1_m3_vanishes():
    for n in (8, 10):
        d1 = simple_head(Partition((n - 1, 1)))
        assert hom_from_simple(d1, perm_module(n, 3)).dim == 0


def test_hom_solvers_agree():
    n = 8
    m2 = perm_module(n, 2)
    for shape in ((7, 1), (6, 2)):
        s = simple_head(Partition(shape))
        assert hom_from_simple(s, m2).dim == hom_space(s, m2).dim


def test_hom_label_mismatch_rejected():
    t = trivial_module(["s", "c"])
    bad = trivial_module(["x"])
    with pytest.raises(ValueError):
        hom_space(t, bad)


def test_hom_dim_symmetric_for_self_dual_subset_modules():
    for n in (6, 8):
        m1, m2 = perm_module(n, 1), perm_module(n, 2)
        assert hom_space(m1, m2).dim == hom_space(m2, m1).dim


def test_fixed_points_subset_modules():
    n = 7
    gens = [Perm.from_cycles([(0, 1)], n), Perm.from_cycles([tuple(range(n))], n)]
    for r in (1, 2, 3):
        assert fixed_points(perm_module(n, r), gens) == 1


def test_fixed_points_equal_orbit_count_for_cyclic_group():
    n = 6
    g = Perm.from_cycles([tuple(range(n))], n)
    m2 = perm_module(n, 2)
    fx = fixed_points(m2, [g])
    # Orbits of the 6-cycle on 2-subsets: 15 pairs in orbits of size 6,6,3.
    assert fx == 3


def test_fixed_points_two_homogeneous_group():
    # The full alternating group is 2-transitive, so one orbit on pairs.
    n = 8
    gens = [
        Perm.from_cycles([(0, 1, 2)], n),
        Perm.from_cycles([tuple(range(1, n))], n),
    ]
    assert fixed_points(perm_module(n, 2), gens) == 1


def test_d_r_trivial_module():
    t = trivial_module(["s", "c"])
    assert d_r(t, 1) == 1
    assert d_r(t, 3) == 1


def test_d_r_against_orbital_count_oracle():
    # For a permutation module, the commutant dimension equals the number
    # of orbits of the subgroup on ordered pairs of subsets.
    n = 6
    for r in (1, 2):
        for s in (1, 2):
            mod = perm_module(n, s)
            got = d_r(mod, r)
            perms = list(young_subgroup_perms(n, r).values())
            import itertools

            pts = list(itertools.combinations(range(n), s))
            idx = {p: i for i, p in enumerate(pts)}
            gmaps = []
            for g in perms:
                gmaps.append(
                    [idx[tuple(sorted(g(x) for x in p))] for p in pts]
                )
            size = len(pts)
            seen = [False] * (size * size)
            orbits = 0
            for start in range(size * size):
                if seen[start]:
                    continue
                orbits += 1
                stack = [start]
                seen[start] = True
                while stack:
                    cur = stack.pop()
                    a, b = divmod(cur, size)
                    for gm in gmaps:
                        nxt = gm[a] * size + gm[b]
                        if not seen[nxt]:
                            seen[nxt] = True
                            stack.append(nxt)
            assert got == orbits, (r, s, got, orbits)


def test_d_r_examples():
    d1 = simple_head(Partition((7, 1)))
    assert d_r(d1, 1) == 1
    spin6 = simple_head(basic_spin(6))
    assert d_r(spin6, 3) == d_r(spin6, 1)


def test_d_r_one_iff_restriction_irreducible():
    n = 6
    for lam in enumerate_partitions(n, 2):
        v = simple_head(lam)
        for r in (1, 3):
            dr = d_r(v, r)
            res = restriction_module(v, r)
            assert (dr == 1) == is_irreducible(res), (lam, r, dr)


def test_hom_dimension_battery_n6():
    rep = hom_dimension_battery(6)
    assert rep["pass"]
    by_lam = {tuple(e["partition"]): e for e in rep["entries"]}
    assert by_lam[(6,)]["d1"] == by_lam[(6,)]["d3"] == 1
    assert by_lam[(4, 2)]["expect_equal"]
    assert by_lam[(5, 1)]["d3"] > by_lam[(5, 1)]["d1"]


def test_hom_dimension_battery_cap_skips():
    rep = hom_dimension_battery(8, dim_cap=20)
    skipped = [e for e in rep["entries"] if e.get("skipped")]
    assert {tuple(e["partition"]) for e in skipped} == {(5, 2, 1), (4, 3, 1)}
    assert rep["pass"]  # the un-skipped entries still verify


def test_simple_heads_are_irreducible():
    for n in (6, 7, 8):
        for lam in enumerate_partitions(n, 2):
            assert is_irreducible(simple_head(lam)), lam


def test_m1_not_irreducible_and_chop():
    n = 8
    m1 = perm_module(n, 1)
    assert not is_irreducible(m1)
    dims = sorted(f.dim for f in chop(m1))
    assert dims == [1, 1, 6]
    trivs = [f for f in chop(m1) if f.dim == 1]
    assert all(module_is_trivial(f) for f in trivs)


def test_chop_m2_composition_factors():
    # M_2 at n=8: triv x2, D_1 x2, D_2 once.
    dims = sorted(f.dim for f in chop(perm_module(8, 2)))
    assert dims == [1, 1, 6, 6, 14]


def test_socle_of_m1_is_spanned_by_all_ones():
    for n in (8, 10):
        m1 = perm_module(n, 1)
        simples = standard_simples(n)
        soc = socle_wrt(m1, simples)
        assert soc.dim == 1
        assert soc.contains(np.ones(n, dtype=np.uint8))


def test_socle_series_errors_on_missing_simples():
    n = 8
    m2 = perm_module(n, 2)
    triv = trivial_module(["s", "c"])
    d1 = simple_head(Partition((7, 1)))
    with pytest.raises(IncompleteSimplesError):
        socle_series_wrt(m2, [triv, d1])  # no D_2 supplied


def test_socle_series_layer_dims_sum():
    n = 10
    m2 = perm_module(n, 2)
    rep = socle_series_wrt(m2, standard_simples(n))
    total = sum(
        item["dim"] * item["mult"] for layer in rep.layers for item in layer
    )
    assert total == m2.dim
    assert '"layers"' in rep.to_json()


def test_structure_battery_small():
    for n in (8, 10):
        assert battery_claims_pass(structure_battery(n))


def test_is_isomorphic_basic():
    n = 8
    m1 = perm_module(n, 1)
    assert is_isomorphic(m1, m1)
    d1 = simple_head(Partition((7, 1)))
    assert not is_isomorphic(m1, d1)


def test_branching_battery():
    rep = branching_battery()
    assert rep["pass"]
    assert len(rep["entries"]) == 4
