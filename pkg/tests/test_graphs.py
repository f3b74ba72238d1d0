import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwist.errors import (DisconnectedGraphError, GraphFormatError,
                          InvalidTreeError)
from mwist.graphs import (VertexWeightedGraph, find_claw, find_claw_brute,
                          format_graph, internal_weight, is_claw_free,
                          is_connected, is_spanning_tree, lift_edge_weights,
                          normalize_leaf_weights, parse_graph, spanning_tree)

from conftest import random_connected, random_line_graph


def test_internal_weight_path():
    g = VertexWeightedGraph(3, [1, 5, 2], [(0, 1), (1, 2)])
    assert internal_weight(g, spanning_tree(g, g.edges)) == 5


def test_internal_weight_single_edge():
    g = VertexWeightedGraph(2, [3, 4], [(0, 1)])
    assert internal_weight(g, spanning_tree(g, g.edges)) == 0


def test_internal_weight_star():
    g = VertexWeightedGraph(4, [9, 1, 1, 1], [(0, 1), (0, 2), (0, 3)])
    assert internal_weight(g, spanning_tree(g, g.edges)) == 9


def test_internal_weight_rejects_bad_trees():
    g = VertexWeightedGraph(3, [1, 1, 1], [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(InvalidTreeError):
        internal_weight(g, [(0, 1)])
    with pytest.raises(InvalidTreeError):
        internal_weight(g, [(0, 1), (1, 2), (0, 2)])


def test_leaf_complement_identity(rng):
    # internal weight = total weight - leaf weight, for any spanning tree
    for _ in range(100):
        g = random_connected(rng, rng.randint(2, 9), extra=rng.randint(0, 5))
        tree = spanning_tree(g, _any_tree(g))
        deg = [0] * g.n
        for u, v in tree.edges:
            deg[u] += 1
            deg[v] += 1
        leaves = sum(g.weights[v] for v in range(g.n) if deg[v] == 1)
        assert internal_weight(g, tree) == g.total_weight() - leaves


def _any_tree(g):
    from mwist.util import UnionFind
    uf = UnionFind(g.n)
    return [e for e in g.edges if uf.union(*e)]


def test_relabel_invariance(rng):
    for _ in range(50):
        g = random_connected(rng, rng.randint(2, 8), extra=3)
        tree = spanning_tree(g, _any_tree(g))
        perm = list(range(g.n))
        rng.shuffle(perm)
        g2 = VertexWeightedGraph(
            g.n,
            [g.weights[perm.index(i)] for i in range(g.n)],
            [(perm[u], perm[v]) for u, v in g.edges])
        tree2 = spanning_tree(g2, [(perm[u], perm[v]) for u, v in tree.edges])
        assert internal_weight(g, tree) == internal_weight(g2, tree2)


def test_claw_detection_basics():
    claw = VertexWeightedGraph(4, [0] * 4, [(0, 1), (0, 2), (0, 3)])
    found = find_claw(claw)
    assert found is not None
    center, leaves = found
    assert center == 0 and sorted(leaves) == [1, 2, 3]
    triangle = VertexWeightedGraph(3, [0] * 3, [(0, 1), (1, 2), (0, 2)])
    assert is_claw_free(triangle)


def test_line_graphs_are_claw_free(rng):
    for _ in range(30):
        g = random_line_graph(rng, rng.randint(3, 8), rng.randint(3, 12))
        assert is_claw_free(g)
        assert find_claw_brute(g) is None


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 10), st.integers(0, 12))
def test_claw_detection_matches_brute_force(seed, n, extra):
    g = random_connected(random.Random(seed), n, extra)
    assert (find_claw(g) is None) == (find_claw_brute(g) is None)


def test_connectivity_and_tree_predicates():
    g = VertexWeightedGraph(4, [0] * 4, [(0, 1), (2, 3)])
    assert not is_connected(g)
    tri = VertexWeightedGraph(3, [0] * 3, [(0, 1), (1, 2), (0, 2)])
    assert is_spanning_tree(tri, [(0, 1), (1, 2)])
    assert not is_spanning_tree(tri, [(0, 1), (1, 2), (0, 2)])


def test_lift_edge_weights():
    g = VertexWeightedGraph(3, [3, 2, 1], [(0, 1), (1, 2), (0, 2)])
    assert lift_edge_weights(g) == {(0, 1): 5, (1, 2): 3, (0, 2): 4}
    z = VertexWeightedGraph(2, [0, 0], [(0, 1)])
    assert lift_edge_weights(z) == {(0, 1): 0}


def test_normalization_zeroes_leaves_only():
    g = VertexWeightedGraph(4, [7, 5, 3, 2], [(0, 1), (1, 2), (2, 3), (1, 3)])
    g2, delta = normalize_leaf_weights(g)
    assert delta == 7 and g2.weights == (0, 5, 3, 2)
    g3, delta3 = normalize_leaf_weights(g2)
    assert delta3 == 0 and g3 is g2


def test_graph_validation():
    with pytest.raises(GraphFormatError):
        VertexWeightedGraph(2, [1], [(0, 1)])
    with pytest.raises(GraphFormatError):
        VertexWeightedGraph(2, [1, -1], [(0, 1)])
    with pytest.raises(GraphFormatError):
        VertexWeightedGraph(2, [1, 1], [(0, 0)])
    with pytest.raises(GraphFormatError):
        VertexWeightedGraph(2, [1, 1], [(0, 1), (1, 0)])
    with pytest.raises(GraphFormatError):
        VertexWeightedGraph(2, [1, 1], [(0, 2)])


def test_text_format_round_trip(rng):
    for _ in range(20):
        g = random_connected(rng, rng.randint(1, 9), extra=rng.randint(0, 6))
        assert parse_graph(format_graph(g)) == g


def test_text_format_comments_and_errors():
    text = "# header comment\n3 2\n1\n\n5\n2\n0 1\n1 2  # trailing\n"
    g = parse_graph(text)
    assert g.n == 3 and g.m == 2 and g.weights == (1, 5, 2)
    with pytest.raises(GraphFormatError):
        parse_graph("2 1\n1\n1\n")  # missing edge line
    with pytest.raises(DisconnectedGraphError):
        parse_graph("4 2\n1\n1\n1\n1\n0 1\n2 3\n")
    parse_graph("4 2\n1\n1\n1\n1\n0 1\n2 3\n", require_connected=False)
