"""Heaviest-first interconnection of settled components.

Components are placed in descending matched weight. A component whose
outward edge does not close a cycle against the forest built so far
contributes its settled tree plus that edge (the designated leaf becomes
internal, securing the 2/3 level); otherwise it falls back to its half-level
tree. Whenever a fallback happens, a strictly heavier component's outward
edge already points into this one, which is what the 7/12 total rests on.
Remaining pieces are joined by the lowest available graph edges.
"""

from __future__ import annotations

from ..errors import StructureError
from ..graphs import SpanningTree, VertexWeightedGraph, spanning_tree
from ..util import UnionFind, edge
from .settle import SettledTree


def interconnect(g: VertexWeightedGraph, settled: list[SettledTree]) -> SpanningTree:
    order = sorted(settled,
                   key=lambda s: (-s.pair_weight, min(s.vertices) if s.vertices else 0))
    uf = UnionFind(g.n)
    chosen: set = set()

    def place(edges) -> None:
        for u, v in sorted(edges):
            if not uf.union(u, v):
                raise StructureError(f"component edge ({u}, {v}) closes a cycle")
            chosen.add(edge(u, v))

    for comp in order:
        outward = comp.outward_edge
        if outward is not None:
            leaf, target = outward
            comp_roots = {uf.find(v) for v in comp.vertices}
            if uf.find(target) not in comp_roots:
                place(comp.tree_edges)
                place([(leaf, target)])
                continue
            place(comp.fallback_edges)
            continue
        place(comp.tree_edges)

    for u, v in g.edges:
        if uf.union(u, v):
            chosen.add((u, v))
    return spanning_tree(g, chosen)
