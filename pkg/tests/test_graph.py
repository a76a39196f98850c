"""Graph construction, degrees, twin sets, separating-pair counts."""

from itertools import combinations
from math import comb

import pytest

import nzcgraph as nz
from nzcgraph import SpaceParams, UnsupportedFieldError
from nzcgraph import vectorspace as vs


def brute_adjacent(u, v):
    """Independent adjacency oracle straight from the coefficient tuples."""
    return u != v and any(a and b for a, b in zip(u, v))


def test_n2_q2_is_path():
    g = nz.build(SpaceParams(2, 2))
    # b1 - (b1+b2) - b2, with b1 not adjacent to b2
    assert g.num_vertices == 3
    assert g.is_adjacent(0, 2) and g.is_adjacent(1, 2)
    assert not g.is_adjacent(0, 1)
    assert g.degree(2) == 2


def test_full_skeleton_vertex_adjacent_to_all():
    g = nz.build(SpaceParams(3, 2))
    assert g.num_vertices == 7
    top = g.t_classes()[3][0]
    assert g.degree(top) == 6


def test_adjacency_matches_brute_force():
    for n, q in [(3, 2), (4, 2), (2, 3), (3, 3)]:
        g = nz.build(SpaceParams(n, q))
        for u in range(g.num_vertices):
            for v in range(g.num_vertices):
                assert g.is_adjacent(u, v) == brute_adjacent(g.vertices[u], g.vertices[v])


def test_edge_count_n3_q2():
    g = nz.build(SpaceParams(3, 2))
    brute = sum(1 for u, v in combinations(range(7), 2)
                if brute_adjacent(g.vertices[u], g.vertices[v]))
    assert brute == 15
    assert g.edge_count() == 15
    assert len(g.edges()) == 15


def test_degree_examples():
    g = nz.build(SpaceParams(4, 2))
    for v in g.t_classes()[3]:
        assert g.degree(v) == 13  # (2^3 - 1) * 2^(4-3) - 1

    g = nz.build(SpaceParams(2, 3))
    for v in g.t_classes()[1]:
        # brute-force count over all 8 vertices
        want = sum(1 for u in range(g.num_vertices)
                   if brute_adjacent(g.vertices[u], g.vertices[v]))
        assert want == 5
        assert g.degree(v) == 5


def test_degree_out_of_range():
    g = nz.build(SpaceParams(2, 2))
    with pytest.raises(IndexError):
        g.degree(3)


def test_check_degree_formula():
    assert nz.check_degree_formula(nz.build(SpaceParams(3, 2))).passed
    assert nz.check_degree_formula(nz.build(SpaceParams(8, 2))).passed
    with pytest.raises(UnsupportedFieldError):
        nz.check_degree_formula(nz.build(SpaceParams(3, 3)))
    # the generalized form is exposed separately and works for any q
    rep = nz.check_degree_formula_general(nz.build(SpaceParams(3, 3)))
    assert rep.passed and rep.details["derived"]


def test_twin_sets_n2_q2_all_singletons():
    g = nz.build(SpaceParams(2, 2))
    assert all(len(ts) == 1 for ts in g.twin_sets())
    assert len(g.twin_sets()) == 3


def test_twin_sets_n2_q3():
    g = nz.build(SpaceParams(2, 3))
    sizes = sorted(len(ts) for ts in g.twin_sets())
    assert sizes == [2, 2, 4]


def test_twin_sets_n3_q3():
    g = nz.build(SpaceParams(3, 3))
    sizes = sorted(len(ts) for ts in g.twin_sets())
    assert sizes == [2, 2, 2, 4, 4, 4, 8]
    assert len(g.twin_sets()) == comb(3, 1) + comb(3, 2) + comb(3, 3)


def test_twin_partition_matches_neighborhood_oracle():
    for n, q in [(2, 2), (4, 2), (2, 3), (3, 3), (2, 4)]:
        g = nz.build(SpaceParams(n, q))
        by_skel = sorted(nz.twin_partition(g), key=lambda ts: (len(ts), ts))
        assert by_skel == nz.twin_partition_by_neighborhood(g)
        assert nz.check_twin_structure(g).passed


def test_pair_count_examples():
    g = nz.build(SpaceParams(4, 2))
    assert nz.count_distinguishing_pairs(g, 1, 2, 2) == 2  # C(3,1) - C(2,0)

    g = nz.build(SpaceParams(3, 2))
    assert nz.count_distinguishing_pairs(g, 1, 2, 1) == 1  # only b_l itself

    # independent oracle: enumerate all C(5,3) = 10 skeletons directly
    g = nz.build(SpaceParams(5, 2))
    brute = sum(1 for s in combinations(range(1, 6), 3) if 2 in s and 4 not in s)
    assert brute == 3
    assert nz.count_distinguishing_pairs(g, 2, 4, 3) == 3


def test_pair_count_preconditions():
    g = nz.build(SpaceParams(4, 2))
    with pytest.raises(ValueError):
        nz.count_distinguishing_pairs(g, 1, 1, 2)
    with pytest.raises(ValueError):
        nz.count_distinguishing_pairs(g, 1, 2, 4)  # i must be <= n-1
    with pytest.raises(UnsupportedFieldError):
        nz.count_distinguishing_pairs(nz.build(SpaceParams(3, 3)), 1, 2, 1)


def test_pair_count_formula_sweep():
    for n in range(3, 11):
        assert nz.check_pair_counts(nz.build(SpaceParams(n, 2))).passed


def test_vertices_in_canonical_order():
    g = nz.build(SpaceParams(3, 3))
    assert g.vertices == [vs.vector_from_id(g.params, v) for v in range(g.num_vertices)]
