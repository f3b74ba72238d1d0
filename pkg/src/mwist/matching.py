"""Exact matchings on general graphs.

Two exact solvers built on one Edmonds alternating-tree search with blossom
contraction:

* :func:`max_cardinality_matching` - repeated augmenting searches, optionally
  restricted to an edge subset.
* :func:`max_weight_matching` - maximum-weight matching under vertex-induced
  edge weights w(e) = w(u) + w(v). Saturatable vertex sets form a matroid, so
  inserting vertices heaviest-first, each via one blossom search that may
  either augment or unmatch a not-yet-committed vertex, yields the exact
  optimum. Every search keeps all committed vertices matched.

Brute-force enumerations of all matchings serve as independent oracles.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import BudgetExceededError
from .graphs import VertexWeightedGraph, lift_edge_weights
from .util import Edge, edge

BRUTE_FORCE_EDGE_LIMIT = 24


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint edge set with its total lifted weight."""

    edges: tuple[Edge, ...]
    weight: int

    def __post_init__(self):
        seen: set[int] = set()
        for u, v in self.edges:
            if u in seen or v in seen:
                raise ValueError(f"matching edges share vertex in {self.edges}")
            seen.add(u)
            seen.add(v)

    def __len__(self) -> int:
        return len(self.edges)

    def mate_array(self, n: int) -> list[int]:
        """Per-vertex partner id, -1 if unmatched."""
        mate = [-1] * n
        for u, v in self.edges:
            mate[u] = v
            mate[v] = u
        return mate


def _finish(inner: int, match: list[int], parent: list[int]) -> None:
    # Rematch along the alternating tree path ending at `inner`, whose far
    # matching edge has just been cleared (or never existed).
    v = inner
    while v != -1:
        pv = parent[v]
        next_inner = match[pv]
        match[v] = pv
        match[pv] = v
        v = next_inner


def _search(adj: list[list[int]], match: list[int], root: int,
            keep: Optional[list[bool]]) -> bool:
    """Edmonds blossom search from the exposed vertex `root`.

    Succeeds on an augmenting path or, when `keep` is given, by freeing an
    even-level vertex outside `keep`; rematches accordingly and returns True.
    Vertices flagged in `keep` stay matched either way.
    """
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    outer = [False] * n
    outer[root] = True
    q = deque([root])

    def lca(a: int, b: int) -> int:
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[match[b]]

    def mark_path(v: int, stop: int, child: int, flag: list[bool]) -> None:
        while base[v] != stop:
            flag[base[v]] = True
            flag[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def release(z: int) -> None:
        w = match[z]
        match[z] = -1
        _finish(w, match, parent)

    while q:
        v = q.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or outer[to]:
                stop = lca(v, to)
                in_blossom = [False] * n
                mark_path(v, stop, to, in_blossom)
                mark_path(to, stop, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = stop
                        if not outer[i]:
                            outer[i] = True
                            if keep is not None and not keep[i]:
                                release(i)
                                return True
                            q.append(i)
            elif parent[to] == -1:
                parent[to] = v
                mate = match[to]
                if mate == -1:
                    _finish(to, match, parent)
                    return True
                if keep is not None and not keep[mate]:
                    match[mate] = -1
                    _finish(to, match, parent)
                    return True
                outer[mate] = True
                q.append(mate)
    return False


def _restricted_adj(g: VertexWeightedGraph, within: Optional[Iterable[tuple[int, int]]]) -> list[list[int]]:
    if within is None:
        return [list(nbrs) for nbrs in g.adj]
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in sorted(edge(a, b) for a, b in within):
        if not g.has_edge(u, v):
            raise ValueError(f"edge ({u}, {v}) not in graph")
        adj[u].append(v)
        adj[v].append(u)
    for nbrs in adj:
        nbrs.sort()
    return adj


def _collect(g: VertexWeightedGraph, match: list[int]) -> Matching:
    edges = tuple(sorted(edge(v, match[v]) for v in range(g.n) if match[v] > v))
    w = g.weights
    return Matching(edges, sum(w[u] + w[v] for u, v in edges))


def max_cardinality_matching(g: VertexWeightedGraph,
                             within: Optional[Iterable[tuple[int, int]]] = None) -> Matching:
    """Maximum-cardinality matching, optionally restricted to an edge subset.

    The reported weight is the total lifted weight of the chosen edges.
    """
    adj = _restricted_adj(g, within)
    match = [-1] * g.n
    # Greedy seed cuts down the number of full searches.
    for u in range(g.n):
        if match[u] == -1:
            for v in adj[u]:
                if match[v] == -1:
                    match[u] = v
                    match[v] = u
                    break
    for v in range(g.n):
        if match[v] == -1 and adj[v]:
            _search(adj, match, v, None)
    return _collect(g, match)


def max_weight_matching(g: VertexWeightedGraph,
                        edge_weights: Optional[dict[Edge, int]] = None) -> Matching:
    """Maximum-weight matching under the lifted edge weights w(u) + w(v).

    `edge_weights`, when supplied, must equal ``lift_edge_weights(g)``; the
    solver is specialised to vertex-induced weights (the only form the tree
    algorithms need) and rejects anything else.
    """
    if edge_weights is not None:
        lifted = lift_edge_weights(g)
        if dict(edge_weights) != lifted:
            raise ValueError("edge_weights must be the lifted map w(e) = w(u) + w(v)")
    w = g.weights
    adj = [list(nbrs) for nbrs in g.adj]
    match = [-1] * g.n

    # Seed: heaviest edges first, skipping zero-weight ones.
    for wt, u, v in sorted(((w[u] + w[v], u, v) for u, v in g.edges),
                           key=lambda t: (-t[0], t[1], t[2])):
        if wt == 0:
            break
        if match[u] == -1 and match[v] == -1:
            match[u] = v
            match[v] = u

    kept = [False] * g.n
    for v in sorted((v for v in range(g.n) if w[v] > 0), key=lambda v: (-w[v], v)):
        if match[v] != -1:
            kept[v] = True
        elif adj[v] and _search(adj, match, v, kept):
            kept[v] = True
    return _collect(g, match)


def _enumerate_matchings(edges: list[Edge], n: int, visit) -> None:
    # All matchings as increasing-index edge subsets.
    m = len(edges)
    used = [False] * n
    chosen: list[Edge] = []

    def rec(i: int) -> None:
        visit(chosen)
        for j in range(i, m):
            u, v = edges[j]
            if not used[u] and not used[v]:
                used[u] = used[v] = True
                chosen.append(edges[j])
                rec(j + 1)
                chosen.pop()
                used[u] = used[v] = False

    rec(0)


def brute_force_max_weight_matching(g: VertexWeightedGraph,
                                    edge_weights: Optional[dict[Edge, int]] = None,
                                    max_edges: int = BRUTE_FORCE_EDGE_LIMIT) -> Matching:
    """Exact maximum-weight matching by enumerating all matchings (m <= budget)."""
    if g.m > max_edges:
        raise BudgetExceededError(f"brute force limited to {max_edges} edges, got {g.m}")
    weights = edge_weights if edge_weights is not None else lift_edge_weights(g)
    best: dict = {"w": 0, "edges": ()}

    def visit(chosen: list[Edge]) -> None:
        wt = sum(weights[e] for e in chosen)
        if wt > best["w"]:
            best["w"] = wt
            best["edges"] = tuple(chosen)

    _enumerate_matchings(list(g.edges), g.n, visit)
    edges = tuple(sorted(best["edges"]))
    w = g.weights
    return Matching(edges, sum(w[u] + w[v] for u, v in edges))


def brute_force_max_cardinality(g: VertexWeightedGraph,
                                within: Optional[Iterable[tuple[int, int]]] = None,
                                max_edges: int = BRUTE_FORCE_EDGE_LIMIT) -> int:
    """Exact maximum matching size by enumeration (m <= budget)."""
    edges = sorted(edge(u, v) for u, v in (within if within is not None else g.edges))
    if len(edges) > max_edges:
        raise BudgetExceededError(f"brute force limited to {max_edges} edges, got {len(edges)}")
    best = {"k": 0}

    def visit(chosen: list[Edge]) -> None:
        if len(chosen) > best["k"]:
            best["k"] = len(chosen)

    _enumerate_matchings(edges, g.n, visit)
    return best["k"]
