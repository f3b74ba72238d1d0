import random

import pytest

from mwist.errors import DisconnectedGraphError
from mwist.graphs import (SpanningTree, VertexWeightedGraph, internal_weight,
                          normalize_leaf_weights, spanning_tree)
from mwist.half import (AbxPartition, approx_half, absorb_isolated, build_h0,
                        connect_forest, partition_abx, tree_to_matching,
                        upper_bound_certificate)
from mwist.matching import max_weight_matching
from mwist.oracle import enumerate_spanning_trees, exact_mwist

from conftest import random_connected


def test_partition_p4():
    g = VertexWeightedGraph(4, [0, 5, 5, 0], [(0, 1), (1, 2), (2, 3)])
    part = partition_abx(g, max_weight_matching(g))
    assert part.pairs == ((1, 2),)  # tie broken toward the lower id as head
    assert part.extras == frozenset({0, 3})
    assert part.roles(4) == ["X", "A", "B", "X"]


def test_partition_drops_zero_pairs():
    g = VertexWeightedGraph(4, [0, 0, 3, 2], [(0, 1), (2, 3), (1, 2)])
    part = partition_abx(g, max_weight_matching(g))
    assert part.pairs == ((2, 3),)
    assert 0 in part.extras and 1 in part.extras


def test_partition_head_is_heavier():
    g = VertexWeightedGraph(2, [2, 4], [(0, 1)])
    g = VertexWeightedGraph(3, [2, 4, 0], [(0, 1), (1, 2)])
    part = partition_abx(g, max_weight_matching(g))
    assert part.pairs == ((1, 0),)


def test_build_h0_settles_adjacent_heads():
    # two pairs with adjacent heads -> one settled component; the extra
    # tail-head edge keeps tail weights alive without a better matching
    g = VertexWeightedGraph(4, [9, 1, 9, 1], [(0, 1), (2, 3), (0, 2), (1, 2)])
    part = partition_abx(g, max_weight_matching(g))
    assert set(part.pairs) == {(0, 1), (2, 3)}
    state = build_h0(g, part)
    assert (0, 2) in state.kept
    assert not state.isolated
    assert state.comps.is_settled(0)


def test_build_h0_no_head_edges_leaves_pairs_isolated():
    # heads 1 and 2 are joined only through tails; H0 keeps both pairs apart
    g = VertexWeightedGraph(4, [5, 4, 5, 4], [(0, 1), (2, 3), (1, 2)])
    part = partition_abx(g, max_weight_matching(g))
    state = build_h0(g, part)
    assert len(state.isolated) == 2


def test_absorb_merges_into_settled():
    # settled component (pairs 0-1, 2-3 with heads adjacent) plus an isolated
    # pair 4-5 whose head is adjacent to tail 1
    g = VertexWeightedGraph(6, [9, 2, 9, 2, 9, 2],
                            [(0, 1), (2, 3), (4, 5), (0, 2), (1, 4)])
    part = partition_abx(g, max_weight_matching(g))
    assert set(part.pairs) == {(0, 1), (2, 3), (4, 5)}
    state = build_h0(g, part)
    assert state.isolated == {2}
    state = absorb_isolated(g, part, state)
    assert (1, 4) in state.kept
    assert state.comps.find(4) == state.comps.find(0)


def test_absorb_cycle_break_drops_lightest():
    # two isolated pairs chained through each other's tails -> 4-cycle,
    # lighter pair edge removed
    g = VertexWeightedGraph(4, [9, 3, 8, 2], [(0, 1), (2, 3), (0, 3), (2, 1)])
    part = partition_abx(g, max_weight_matching(g))
    assert set(part.pairs) == {(0, 1), (2, 3)}
    state = build_h0(g, part)
    assert len(state.isolated) == 2
    state = absorb_isolated(g, part, state)
    assert (0, 1) in state.kept and (2, 3) not in state.kept
    assert internal_weight(g, connect_forest(g, state)) >= 11  # heads + heavy tail


def test_connect_forest_identity_and_bridge():
    g = VertexWeightedGraph(3, [0, 5, 0], [(0, 1), (1, 2)])
    part = partition_abx(g, max_weight_matching(g))
    state = build_h0(g, part)
    state = absorb_isolated(g, part, state)
    tree = connect_forest(g, state)
    assert sorted(tree.edges) == [(0, 1), (1, 2)]


def test_tree_to_matching_examples():
    p3 = VertexWeightedGraph(3, [0, 5, 0], [(0, 1), (1, 2)])
    m = tree_to_matching(p3, spanning_tree(p3, p3.edges))
    assert m.weight >= 5
    star = VertexWeightedGraph(4, [9, 1, 1, 1], [(0, 1), (0, 2), (0, 3)])
    m = tree_to_matching(star, spanning_tree(star, star.edges))
    assert len(m) == 1 and m.weight == 10
    z = VertexWeightedGraph(2, [0, 0], [(0, 1)])
    assert tree_to_matching(z, spanning_tree(z, z.edges)).weight == 0


def test_tree_to_matching_dominates_objective(rng):
    for _ in range(60):
        g = random_connected(rng, rng.randint(2, 7), extra=rng.randint(0, 4))
        def check(edges):
            t = SpanningTree(edges)
            assert tree_to_matching(g, t).weight >= internal_weight(g, t)
        enumerate_spanning_trees(g, check)


def test_upper_bound_certificate():
    p3 = VertexWeightedGraph(3, [0, 5, 0], [(0, 1), (1, 2)])
    assert upper_bound_certificate(p3) == 5
    tri = VertexWeightedGraph(3, [3, 2, 1], [(0, 1), (1, 2), (0, 2)])
    assert upper_bound_certificate(tri) == 5
    _t, opt = exact_mwist(tri)
    assert opt <= 5


def test_approx_half_p3_trace():
    g = VertexWeightedGraph(3, [0, 5, 0], [(0, 1), (1, 2)])
    tree, cert = approx_half(g)
    assert sorted(tree.edges) == [(0, 1), (1, 2)]
    assert cert.tree_weight == 5 and cert.upper_bound == 5
    assert cert.ratio == (1, 2) and cert.holds()


def test_approx_half_degenerate():
    one = VertexWeightedGraph(1, [7], [])
    tree, cert = approx_half(one)
    assert tree.edges == () and cert.tree_weight == 0
    two = VertexWeightedGraph(2, [3, 4], [(0, 1)])
    tree, cert = approx_half(two)
    assert cert.tree_weight == 0 and cert.upper_bound == 0  # leaves zeroed


def test_approx_half_rejects_disconnected():
    g = VertexWeightedGraph(4, [1] * 4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError):
        approx_half(g)


def test_half_bound_against_oracle(rng):
    for _ in range(400):
        g = random_connected(rng, rng.randint(1, 8), extra=rng.randint(0, 6),
                             wmax=rng.choice([1, 3, 20]))
        tree, cert = approx_half(g)
        assert cert.holds()
        assert 2 * cert.tree_weight >= cert.upper_bound
        assert internal_weight(g, tree) == cert.tree_weight
        _t, opt = exact_mwist(g)
        assert opt <= cert.upper_bound
        assert 2 * cert.tree_weight >= opt
