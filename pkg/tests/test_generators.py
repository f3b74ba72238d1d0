import pytest

from mwist.clawfree.reduction import apply_operation1
from mwist.errors import GraphFormatError
from mwist.generators import GenSpec, generate
from mwist.graphs import format_graph, is_claw_free, is_connected


def test_path_family_deterministic():
    spec = GenSpec(family="path", n=5, weights="uniform:0:9", seed=1)
    g1, g2 = generate(spec), generate(spec)
    assert g1 == g2
    assert format_graph(g1) == format_graph(g2)
    assert g1.m == 4 and is_connected(g1)


def test_seed_changes_instance():
    a = generate(GenSpec(family="random_gnm", n=12, m=18, seed=1))
    b = generate(GenSpec(family="random_gnm", n=12, m=18, seed=2))
    assert a != b


def test_line_graph_family_claw_free():
    for seed in range(15):
        g = generate(GenSpec(family="line_graph", n=7, m=10, seed=seed))
        assert is_claw_free(g)
        assert g.n == 10  # one vertex per base edge


def test_planted_hangers_reducible():
    hits = 0
    for seed in range(15):
        g = generate(GenSpec(family="planted_hangers", n=14, seed=seed))
        assert is_connected(g)
        _reduced, records = apply_operation1(g)
        hits += bool(records)
    assert hits >= 12


def test_weight_distributions():
    z = generate(GenSpec(family="cycle", n=30, weights="zeroheavy:0.8", seed=3))
    assert sum(1 for w in z.weights if w == 0) >= 15
    u = generate(GenSpec(family="star", n=30, weights="uniform:5:5", seed=3))
    assert set(u.weights) == {5}
    p = generate(GenSpec(family="cycle", n=40, weights="zipf:2.0", seed=3))
    assert all(w >= 1 for w in p.weights)


def test_spec_validation():
    with pytest.raises(GraphFormatError):
        GenSpec(family="nope", n=5)
    with pytest.raises(GraphFormatError):
        GenSpec(family="random_gnm", n=5, m=3)  # below n-1
    with pytest.raises(GraphFormatError):
        GenSpec(family="path", n=5, weights="uniform:9:1")
    with pytest.raises(GraphFormatError):
        GenSpec(family="path", n=5, weights="bogus:1")


def test_gnm_connected_and_sized():
    g = generate(GenSpec(family="random_gnm", n=20, m=30, seed=9))
    assert g.n == 20 and g.m == 30 and is_connected(g)
