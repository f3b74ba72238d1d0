"""Exact ground truth for small instances via spanning-tree enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import BudgetExceededError, DisconnectedGraphError
from .graphs import SpanningTree, VertexWeightedGraph, is_connected
from .util import Edge, RollbackUnionFind


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 10
    max_trees: int = 10_000_000

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_trees <= 0:
            raise ValueError("budgets must be positive")


def enumerate_spanning_trees(g: VertexWeightedGraph,
                             visitor: Callable[[tuple[Edge, ...]], None],
                             max_trees: int = 10_000_000) -> int:
    """Call `visitor` once per spanning tree (as a sorted edge tuple).

    Trees are produced as increasing-index edge subsets, so the order is
    deterministic. Returns the number of trees. Raises BudgetExceededError
    when the count passes `max_trees`.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("cannot enumerate spanning trees of a disconnected graph")
    n, m = g.n, g.m
    need = n - 1
    if need <= 0:
        visitor(())
        return 1
    edges = g.edges
    uf = RollbackUnionFind(n)
    chosen: list[Edge] = []
    count = 0

    def rec(start: int, remaining: int) -> None:
        nonlocal count
        if remaining == 0:
            count += 1
            if count > max_trees:
                raise BudgetExceededError(f"spanning tree budget {max_trees} exceeded")
            visitor(tuple(chosen))
            return
        # Not enough edges left to finish this branch.
        last = m - remaining
        for j in range(start, last + 1):
            u, v = edges[j]
            if uf.union(u, v):
                chosen.append(edges[j])
                rec(j + 1, remaining - 1)
                chosen.pop()
                uf.rollback()

    rec(0, need)
    return count


def exact_mwist(g: VertexWeightedGraph,
                budget: OracleBudget = OracleBudget()) -> tuple[SpanningTree, int]:
    """Optimal internal-weight spanning tree by exhaustive enumeration.

    Returns (one maximizing tree, optimum). The first maximizer in the
    deterministic enumeration order is kept.
    """
    if g.n > budget.max_vertices:
        raise BudgetExceededError(
            f"exact solver limited to {budget.max_vertices} vertices, got {g.n}")
    w = g.weights
    n = g.n
    best_w = -1
    best_tree: tuple[Edge, ...] = ()

    def visit(tree: tuple[Edge, ...]) -> None:
        nonlocal best_w, best_tree
        deg = [0] * n
        for u, v in tree:
            deg[u] += 1
            deg[v] += 1
        tw = 0
        for v in range(n):
            if deg[v] >= 2:
                tw += w[v]
        if tw > best_w:
            best_w = tw
            best_tree = tree

    enumerate_spanning_trees(g, visit, max_trees=budget.max_trees)
    return SpanningTree(best_tree), best_w


def spanning_tree_count(g: VertexWeightedGraph) -> int:
    """Number of spanning trees via the matrix-tree theorem, exact integers.

    Uses fraction-free (Bareiss) elimination on a Laplacian minor.
    """
    if g.n <= 1:
        return 1
    if not is_connected(g):
        return 0
    k = g.n - 1
    lap = [[0] * k for _ in range(k)]
    for u, v in g.edges:
        if u < k:
            lap[u][u] += 1
        if v < k:
            lap[v][v] += 1
        if u < k and v < k:
            lap[u][v] -= 1
            lap[v][u] -= 1
    prev = 1
    sign = 1
    for i in range(k):
        if lap[i][i] == 0:
            for r in range(i + 1, k):
                if lap[r][i] != 0:
                    lap[i], lap[r] = lap[r], lap[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                lap[r][c] = (lap[r][c] * lap[i][i] - lap[r][i] * lap[i][c]) // prev
            lap[r][i] = 0
        prev = lap[i][i]
    return sign * lap[k - 1][k - 1]
