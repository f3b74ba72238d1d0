"""Weight-exact reductions removing 2-4 vertex components behind a cut vertex.

Each reduction replaces such a component C with a weight-0 stub attached to
the cut vertex v, records the best internal weight any spanning tree can
collect inside C (with w(v) treated as 0) together with a local tree
realizing it, and is exactly invertible: splicing the local tree back adds
precisely the recorded weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..graphs import VertexWeightedGraph
from ..oracle import OracleBudget, exact_mwist
from ..util import Edge, UnionFind, edge


@dataclass(frozen=True)
class ReductionRecord:
    """One reduction step, expressed in the ids of the graph it was applied to."""

    cut_vertex: int
    removed: tuple[int, ...]
    local_weight: int
    local_tree: tuple[Edge, ...]
    survivors: tuple[int, ...]  # old ids kept, ascending; new id i maps to survivors[i]

    @property
    def stub(self) -> int:
        """Id of the added weight-0 vertex in the reduced graph."""
        return len(self.survivors)


def _local_optimum(g: VertexWeightedGraph, cut: int, comp: tuple[int, ...]
                   ) -> tuple[int, tuple[Edge, ...]]:
    verts = sorted(comp) + [cut]
    index = {v: i for i, v in enumerate(verts)}
    weights = [g.weights[v] for v in verts]
    weights[index[cut]] = 0
    sub_edges = [(index[u], index[v]) for u, v in g.edges
                 if u in index and v in index]
    sub = VertexWeightedGraph(len(verts), weights, sub_edges)
    tree, best = exact_mwist(sub, OracleBudget(max_vertices=5, max_trees=10_000))
    back = {i: v for v, i in index.items()}
    local = tuple(sorted(edge(back[u], back[v]) for u, v in tree.edges))
    return best, local


def find_reduction(g: VertexWeightedGraph) -> Optional[ReductionRecord]:
    """First qualifying cut-vertex configuration, scanning cut vertices by id."""
    if g.n < 5:
        return None
    for v in range(g.n):
        uf = UnionFind(g.n)
        for a, b in g.edges:
            if a != v and b != v:
                uf.union(a, b)
        comps: dict[int, list[int]] = {}
        for u in range(g.n):
            if u != v:
                comps.setdefault(uf.find(u), []).append(u)
        if len(comps) < 2:
            continue
        for members in sorted(comps.values(), key=lambda c: c[0]):
            if 2 <= len(members) <= 4:
                removed = tuple(sorted(members))
                local_weight, local_tree = _local_optimum(g, v, removed)
                survivors = tuple(u for u in range(g.n) if u not in set(removed))
                return ReductionRecord(v, removed, local_weight, local_tree, survivors)
    return None


def apply_reduction(g: VertexWeightedGraph, rec: ReductionRecord) -> VertexWeightedGraph:
    index = {old: new for new, old in enumerate(rec.survivors)}
    stub = rec.stub
    weights = [g.weights[old] for old in rec.survivors] + [0]
    removed = set(rec.removed)
    edges = [(index[u], index[v]) for u, v in g.edges
             if u not in removed and v not in removed]
    edges.append((index[rec.cut_vertex], stub))
    return VertexWeightedGraph(len(rec.survivors) + 1, weights, edges)


def apply_operation1(g: VertexWeightedGraph
                     ) -> tuple[VertexWeightedGraph, list[ReductionRecord]]:
    """Reduce to fixpoint; every step removes 2-4 vertices and adds the stub."""
    records: list[ReductionRecord] = []
    while True:
        rec = find_reduction(g)
        if rec is None:
            return g, records
        records.append(rec)
        g = apply_reduction(g, rec)


def undo_operation1(tree_edges, records: list[ReductionRecord]) -> tuple[Edge, ...]:
    """Splice the recorded local trees back, newest reduction first.

    `tree_edges` spans the fully reduced graph; the result spans the original
    graph and its internal weight grows by exactly the sum of the recorded
    local weights.
    """
    edges = [edge(u, v) for u, v in tree_edges]
    for rec in reversed(records):
        stub = rec.stub
        mapped: list[Edge] = []
        stub_seen = False
        for u, v in edges:
            if u == stub or v == stub:
                other = v if u == stub else u
                if rec.survivors[other] != rec.cut_vertex:
                    raise ValueError("stub attached to a vertex other than its cut vertex")
                stub_seen = True
                continue
            mapped.append(edge(rec.survivors[u], rec.survivors[v]))
        if not stub_seen:
            raise ValueError("spanning tree of the reduced graph must contain the stub edge")
        mapped.extend(rec.local_tree)
        edges = mapped
    return tuple(sorted(edges))
