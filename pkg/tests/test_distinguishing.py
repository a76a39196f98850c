"""Labelings, distinguishing engines, and the distinguishing-number search."""

import pytest

import nzcgraph as nz
from nzcgraph import SpaceParams, UnsupportedFieldError
from nzcgraph.distinguishing import (all_distinct_labeling, constant_labeling,
                                     transposition_report)


def vid(g, coeffs):
    return nz.vector_id(g.params, coeffs)


def test_all_distinct_is_distinguishing():
    for n, q in [(3, 2), (2, 3)]:
        g = nz.build(SpaceParams(n, q))
        grp = (nz.aut_group_structural(g) if q == 2 else nz.aut_group_oracle(g))
        assert nz.is_distinguishing(g, grp, all_distinct_labeling(g))


def test_constant_is_not_distinguishing():
    g = nz.build(SpaceParams(3, 2))
    grp = nz.aut_group_structural(g)
    assert not nz.is_distinguishing(g, grp, constant_labeling(g))


def test_two_colour_scheme_basis_colors_n4():
    g = nz.build(SpaceParams(4, 2))
    f = nz.constructive_labeling_q2(g)
    basis = [vid(g, nz.basis_vector(g.params, i)) for i in range(1, 5)]
    assert [f.colors[v] for v in basis] == [1, 1, 2, 2]


def test_two_colour_scheme_consecutive_pairs_n6():
    g = nz.build(SpaceParams(6, 2))
    f = nz.constructive_labeling_q2(g)
    color1 = {g.skeletons[v] for v in g.t_classes()[2] if f.colors[v] == 1}
    want = {0b000011, 0b000110, 0b001100, 0b011000, 0b110000}
    assert color1 == want
    assert all(f.colors[v] == 2 for v in g.t_classes()[2]
               if g.skeletons[v] not in want)


def test_two_colour_scheme_guards():
    with pytest.raises(UnsupportedFieldError):
        nz.constructive_labeling_q2(nz.build(SpaceParams(3, 3)))
    with pytest.raises(ValueError):
        nz.constructive_labeling_q2(nz.build(SpaceParams(2, 2)))


def test_two_colour_scheme_distinguishing_small():
    for n in (3, 4, 5, 6):
        g = nz.build(SpaceParams(n, 2))
        f = nz.constructive_labeling_q2(g)
        grp = nz.aut_group_structural(g)
        assert nz.is_distinguishing(g, grp, f)
        # cross-engine agreement
        assert nz.is_distinguishing_structural(g, f)
        assert nz.is_distinguishing_search(g, f)


def test_transposition_tallies_n4():
    g = nz.build(SpaceParams(4, 2))
    bd = nz.destroyed_transpositions(g, nz.constructive_labeling_q2(g))
    assert bd.tallies["T1"] == 4  # n^2/4
    # the literal class-(n-1) rule selects nothing for n >= 4, so its slot
    # stays empty and the class-2 slot absorbs the stated n-2
    assert bd.tallies["T(n-1)"] == 0
    assert bd.tallies["T2"] == 2
    assert bd.expected == {"T1": 4, "T(n-1)": 2, "T2": 0}
    assert bd.covers_all
    assert transposition_report(g, nz.constructive_labeling_q2(g)).status == "anomaly"


def test_transposition_tallies_n5():
    g = nz.build(SpaceParams(5, 2))
    bd = nz.destroyed_transpositions(g, nz.constructive_labeling_q2(g))
    assert bd.tallies == {"T1": 6, "T(n-1)": 0, "T2": 4}
    assert bd.expected == {"T1": 6, "T(n-1)": 3, "T2": 1}
    assert bd.covers_all


def test_transposition_tallies_n3_match():
    # for n = 3 the class-(n-1) slot and the class-2 slot share one class, so
    # the stated forms (2, 1, 0) come out exactly
    g = nz.build(SpaceParams(3, 2))
    rep = transposition_report(g, nz.constructive_labeling_q2(g))
    assert rep.status == "pass"


def test_transpositions_constant_labeling_breaks_nothing():
    g = nz.build(SpaceParams(3, 2))
    bd = nz.destroyed_transpositions(g, constant_labeling(g))
    assert all(t == 0 for t in bd.tallies.values())
    assert len(bd.unattributed) == 3


def test_swap_broken_by_pair_n3():
    g = nz.build(SpaceParams(3, 2))
    grp = nz.aut_group_structural(g)
    f = nz.constructive_labeling_q2(g)
    u, v = vid(g, (1, 0, 1)), vid(g, (0, 1, 1))  # b1+b3 vs b2+b3
    assert f.colors[u] != f.colors[v]
    assert nz.check_swap_broken_by_pair(g, grp, f, u, v, 1, 2)


def test_swap_broken_by_pair_n4_disjoint():
    g = nz.build(SpaceParams(4, 2))
    grp = nz.aut_group_structural(g)
    f = nz.constructive_labeling_q2(g)
    u, v = vid(g, (1, 0, 0, 1)), vid(g, (0, 1, 1, 0))  # {b1,b4} vs {b2,b3}
    assert f.colors[u] != f.colors[v]
    assert nz.check_swap_broken_by_pair(g, grp, f, u, v, 1, 2)


def test_swap_broken_precondition_same_colors():
    g = nz.build(SpaceParams(3, 2))
    grp = nz.aut_group_structural(g)
    f = constant_labeling(g, 1)
    u, v = vid(g, (1, 0, 1)), vid(g, (0, 1, 1))
    with pytest.raises(ValueError):
        nz.check_swap_broken_by_pair(g, grp, f, u, v, 1, 2)


def test_dist_exact_q2():
    g = nz.build(SpaceParams(3, 2))
    r = nz.dist_number(g)
    assert (r.lower, r.upper, r.method) == (2, 2, "exact")
    assert r.refuted == 1

    g = nz.build(SpaceParams(2, 2))  # the path on three vertices
    r = nz.dist_number(g)
    assert (r.value, r.method) == (2, "exact")


def test_dist_single_vertex():
    r = nz.dist_number(nz.build(SpaceParams(1, 2)))
    assert r.value == 1


def test_dist_2_3_exact_four_with_refutation():
    g = nz.build(SpaceParams(2, 3))
    r = nz.dist_number(g)
    assert (r.value, r.method) == (4, "exact")
    assert r.refuted == 3  # no 3-colour distinguishing labeling exists
    grp = nz.aut_group_oracle(g)
    assert nz.exists_distinguishing_labeling(g, grp, 3) is None
    assert nz.exists_distinguishing_labeling(g, grp, 4) is not None


def test_dist_3_3_bounds_meet_at_8():
    g = nz.build(SpaceParams(3, 3))
    r = nz.dist_number(g)
    assert r.value == 8
    assert r.method == "bounded"  # squeeze: twin bound meets the validated scheme
    assert r.lower_source == "twin-sets"


def test_dist_bounded_mode_above_cap():
    g = nz.build(SpaceParams(5, 2))  # 31 vertices > default exact cap
    r = nz.dist_number(g)
    assert r.method == "bounded"
    assert (r.lower, r.upper) == (2, 2)
    assert r.value == 2


def test_twin_lower_bound():
    assert nz.twin_lower_bound(nz.build(SpaceParams(3, 3))) == 8
    assert nz.twin_lower_bound(nz.build(SpaceParams(5, 2))) == 1
    # (q-1)^2 = 9, confirmed against the twin partition itself
    g = nz.build(SpaceParams(2, 4))
    assert nz.twin_lower_bound(g) == max(len(ts) for ts in nz.twin_partition(g)) == 9


def test_twin_injective_scheme_2_3():
    g = nz.build(SpaceParams(2, 3))
    f = nz.constructive_labeling_q3(g)
    grp = nz.aut_group_oracle(g)
    assert nz.is_distinguishing(g, grp, f)
    assert nz.is_distinguishing_search(g, f)
    assert len(f.used_colors()) == 4
    # twin sets of equal size carry distinct colour sets; identical sets
    # would admit an automorphism exchanging whole twin sets
    sets = [frozenset(f.colors[v] for v in ts) for ts in g.twin_sets()]
    assert len(set(sets)) == len(sets)


def test_naive_equal_colour_sets_fail_2_3():
    # regression for the engine choice: per-twin-set colours 1..s are NOT
    # distinguishing, the colour-matched exchange of the two basis twin sets
    # survives
    g = nz.build(SpaceParams(2, 3))
    colors = [0] * g.num_vertices
    for ts in g.twin_sets():
        for k, v in enumerate(ts):
            colors[v] = k + 1
    naive = nz.Labeling(tuple(colors), 4)
    grp = nz.aut_group_oracle(g)
    assert not nz.is_distinguishing(g, grp, naive)
    witness = nz.find_color_preserving(g, naive)
    assert witness is not None and nz.is_automorphism(g, witness)


def test_twin_injective_scheme_3_3():
    g = nz.build(SpaceParams(3, 3))
    f = nz.constructive_labeling_q3(g)
    assert f.t == 8
    assert len(f.used_colors()) == 8
    assert nz.is_distinguishing_search(g, f)


def test_twin_injective_rejects_q2():
    with pytest.raises(UnsupportedFieldError):
        nz.constructive_labeling_q3(nz.build(SpaceParams(3, 2)))


def test_structural_survivors_find_preserving_perms():
    g = nz.build(SpaceParams(3, 2))
    # colour only by class: every basis permutation survives
    colors = tuple(g.class_of(v) for v in range(g.num_vertices))
    f = nz.Labeling(colors, 3)
    assert len(nz.structural_survivors(g, f)) == 5  # all of S_3 minus identity
    assert not nz.is_distinguishing_structural(g, f)


def test_engines_agree_on_random_labelings():
    import random

    rng = random.Random(5)
    for n, q in [(3, 2), (4, 2), (2, 3)]:
        g = nz.build(SpaceParams(n, q))
        grp = (nz.aut_group_structural(g) if q == 2 else nz.aut_group_oracle(g))
        for t in (2, 3):
            for _ in range(8):
                f = nz.Labeling(tuple(rng.randint(1, t) for _ in range(g.num_vertices)), t)
                expect = nz.is_distinguishing(g, grp, f)
                assert nz.is_distinguishing_search(g, f) == expect
                if q == 2:
                    assert nz.is_distinguishing_structural(g, f) == expect
