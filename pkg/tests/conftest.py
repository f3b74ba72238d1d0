"""Shared instance builders for the test suite."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from mwist.graphs import VertexWeightedGraph, is_connected


def random_connected(rng: random.Random, n: int, extra: int = 0,
                     wmax: int = 9, weights=None) -> VertexWeightedGraph:
    """Random tree plus `extra` random edges; always connected."""
    edges = set()
    if n > 1:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            a, b = order[i], order[rng.randrange(i)]
            edges.add((min(a, b), max(a, b)))
    pool = [e for e in combinations(range(n), 2) if e not in edges]
    rng.shuffle(pool)
    edges.update(pool[:extra])
    if weights is None:
        weights = [rng.randint(0, wmax) for _ in range(n)]
    return VertexWeightedGraph(n, weights, sorted(edges))


def line_graph_of(base_edges: list[tuple[int, int]], weights) -> VertexWeightedGraph:
    base_edges = sorted(tuple(sorted(e)) for e in base_edges)
    m = len(base_edges)
    edges = []
    for i in range(m):
        for j in range(i + 1, m):
            if set(base_edges[i]) & set(base_edges[j]):
                edges.append((i, j))
    return VertexWeightedGraph(m, list(weights), edges)


def random_line_graph(rng: random.Random, nv: int, ne: int,
                      weight_fn=None) -> VertexWeightedGraph:
    base = random_connected(rng, nv, max(0, ne - (nv - 1)), weights=[0] * nv)
    if weight_fn is None:
        weight_fn = lambda r: r.randint(0, 9)
    weights = [weight_fn(rng) for _ in range(base.m)]
    return line_graph_of(list(base.edges), weights)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
