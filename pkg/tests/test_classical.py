import numpy as np
import pytest

from repbench.classical import (
    Fq,
    build_action,
    expected_perm_group_order,
    lemma_r3_battery,
    parse_case,
    point_count_formula,
    rank3_stats,
    triple_mark,
)
from repbench.orbits import subset_orbit_labels, _all_subsets_colex
from repbench.symgrp import enumerate_group, fixed_r_subsets


@pytest.mark.parametrize("p,e", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_field_axioms(p, e):
    f = Fq(p, e)
    q = f.q
    # Associativity and distributivity on all triples for tiny q.
    if q <= 9:
        for a in range(q):
            for b in range(q):
                assert f.add(a, b) == f.add(b, a)
                assert f.mul(a, b) == f.mul(b, a)
                for c in range(q):
                    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in range(1, q):
        assert f.mul(a, f.inv(a)) == 1
    # The generator has full multiplicative order.
    seen = set()
    x = 1
    for _ in range(q - 1):
        seen.add(x)
        x = f.mul(x, f.gen)
    assert len(seen) == q - 1


def test_field_rejects_unknown():
    with pytest.raises(ValueError):
        Fq(2, 9)


def test_point_count_formulas():
    assert point_count_formula("sl", 4, 2) == 35
    assert point_count_formula("sl", 4, 3) == 130
    assert point_count_formula("sp", 4, 3) == 40
    assert point_count_formula("su", 4, 2) == 45
    assert point_count_formula("su", 4, 3) == 280
    assert point_count_formula("o", 5, 3) == 40
    assert point_count_formula("o+", 6, 2) == 35
    assert point_count_formula("o-", 6, 2) == 27


def test_expected_orders():
    assert expected_perm_group_order("sl", 4, 2) == 20160
    assert expected_perm_group_order("sp", 4, 3) == 25920
    assert expected_perm_group_order("su", 4, 2) == 25920
    assert expected_perm_group_order("o", 5, 3) == 25920
    assert expected_perm_group_order("o+", 6, 2) == 20160
    assert expected_perm_group_order("o-", 6, 2) == 25920
    assert expected_perm_group_order("sl", 4, 3) == 6065280
    assert expected_perm_group_order("su", 4, 3) == 3265920


def test_build_action_validations_small():
    act = build_action("sl", 4, 2)
    assert act.n == 35
    assert act.notes["group_order_checked"] == 20160
    assert act.notes["field"]["q"] == 2
    act = build_action("o-", 6, 2)
    assert act.n == 27
    assert act.notes["group_order_checked"] == 25920


def test_rank3_stats_sl42():
    act = build_action("sl", 4, 2)
    st = rank3_stats(act)
    assert (st.f1, st.f2, st.f3) == (1, 2, 6)
    # The six orbits are separated by the subspace marks.
    assert st.f3_lower == 6


def test_rank3_stats_sp43_and_o53():
    for form, d in (("sp", 4), ("o", 5)):
        act = build_action(form, d, 3)
        st = rank3_stats(act)
        assert (st.n, st.f1, st.f2, st.f3) == (40, 1, 2, 5)


def test_o_minus_exact_value():
    # Degree 27 is odd, so the even-degree orbit lemma does not apply; the
    # true count is 4 (see the decisions ledger for the cross-checks).
    act = build_action("o-", 6, 2)
    st = rank3_stats(act)
    assert st.f3 == 4
    els = enumerate_group(act.gens, cap=30000)
    total = sum(fixed_r_subsets(g.cycle_type(), 3) for g in els)
    assert total == 4 * len(els)


def test_su42_stats():
    act = build_action("su", 4, 2)
    st = rank3_stats(act)
    assert (st.n, st.f1, st.f2, st.f3) == (45, 1, 2, 6)


def test_marks_are_orbit_invariants():
    act = build_action("sp", 4, 3)
    labels = subset_orbit_labels(act.gen_images, act.n, 3)
    subs = _all_subsets_colex(act.n, 3)
    rng = np.random.default_rng(5)
    per_orbit = {}
    for idx in rng.choice(len(subs), size=150, replace=False):
        lab = int(labels[idx])
        mark = triple_mark(act, tuple(int(x) for x in subs[idx]))
        if lab in per_orbit:
            assert per_orbit[lab] == mark
        else:
            per_orbit[lab] = mark


def test_parse_case():
    assert parse_case("o+:d=6,q=2") == ("o+", 6, 2)
    assert parse_case("sl:d=4,q=3") == ("sl", 4, 3)


def test_bad_parameters_rejected():
    with pytest.raises(ValueError):
        build_action("sp", 5, 3)
    with pytest.raises(ValueError):
        build_action("o", 6, 3)
    with pytest.raises(ValueError):
        build_action("sl", 3, 2)


def test_small_battery_subset():
    rep = lemma_r3_battery(["sl:d=4,q=2", "sp:d=4,q=3", "o-:d=6,q=2"])
    assert rep["pass"]
    by_case = {e["case"]: e for e in rep["entries"]}
    assert by_case["sp:d=4,q=3"]["floor_applies"]
    assert by_case["sp:d=4,q=3"]["parity_witness"] is not None
    assert not by_case["o-:d=6,q=2"]["floor_applies"]
    assert by_case["o-:d=6,q=2"]["f3"] == 4
