"""Matching-based 1/2-approximation for maximum-weight internal spanning trees.

Pipeline: zero the leaf weights, compute a maximum-weight matching under the
lifted edge weights, split matched pairs into heads (heavier endpoint) and
tails, grow a maximum-weight spanning forest over the head side, chain the
still-isolated matched pairs through tail vertices (breaking any cycle at its
lightest matched edge), and connect everything into a spanning tree. The
result T satisfies 2*w(T) >= w(M) for the matching weight w(M), which itself
bounds the optimum from above.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .certify import RatioCertificate
from .errors import DisconnectedGraphError, StructureError
from .graphs import (SpanningTree, VertexWeightedGraph, internal_weight,
                     is_connected, normalize_leaf_weights, spanning_tree)
from .matching import Matching, max_weight_matching
from .util import Edge, UnionFind, edge


@dataclass(frozen=True)
class AbxPartition:
    """Heads/tails of the positive matched pairs; everything else is extra.

    pairs[i] = (head, tail) with w(head) >= w(tail) and w(head)+w(tail) > 0;
    extras covers unmatched vertices and endpoints of zero-weight matched
    edges, whose tree degree never matters for the bound.
    """

    pairs: tuple[tuple[int, int], ...]
    extras: frozenset[int]

    def roles(self, n: int) -> list[str]:
        out = ["X"] * n
        for a, b in self.pairs:
            out[a] = "A"
            out[b] = "B"
        return out


def partition_abx(g: VertexWeightedGraph, matching: Matching) -> AbxPartition:
    w = g.weights
    pairs = []
    matched: set[int] = set()
    for u, v in matching.edges:
        matched.add(u)
        matched.add(v)
        if w[u] + w[v] == 0:
            continue
        if (w[u], -u) >= (w[v], -v):
            pairs.append((u, v))
        else:
            pairs.append((v, u))
    covered = {x for p in pairs for x in p}
    extras = frozenset(v for v in range(g.n) if v not in covered)
    return AbxPartition(tuple(sorted(pairs)), extras)


class _Components:
    """Union-find with a settled flag per component."""

    def __init__(self, n: int):
        self.uf = UnionFind(n)
        self._settled: set[int] = set()

    def find(self, v: int) -> int:
        return self.uf.find(v)

    def is_settled(self, v: int) -> bool:
        return self.uf.find(v) in self._settled

    def mark_settled(self, v: int) -> None:
        self._settled.add(self.uf.find(v))

    def union(self, a: int, b: int) -> None:
        settled = self.is_settled(a) or self.is_settled(b)
        self._settled.discard(self.uf.find(a))
        self._settled.discard(self.uf.find(b))
        self.uf.union(a, b)
        if settled:
            self._settled.add(self.uf.find(a))


@dataclass
class ForestState:
    """Acyclic working subgraph built from the matching."""

    kept: set[Edge]
    comps: _Components
    pairs: tuple[tuple[int, int], ...]
    isolated: set[int] = field(default_factory=set)  # indices into pairs

    def component_edges(self, g: VertexWeightedGraph) -> dict[int, list[Edge]]:
        out: dict[int, list[Edge]] = {}
        for e in sorted(self.kept):
            out.setdefault(self.comps.find(e[0]), []).append(e)
        return out


def build_h0(g: VertexWeightedGraph, part: AbxPartition) -> ForestState:
    """Matched pairs plus a maximum-weight spanning forest on the head side.

    Forest edges run between heads and head-or-extra vertices and are added
    heaviest first with cycle rejection; zero-weight edges still join, so a
    pair stays isolated only if its head has no such edge at all. Components
    with two or more edges are settled: each head in them has degree >= 2.
    """
    w = g.weights
    heads = {a for a, _ in part.pairs}
    side = heads | part.extras
    comps = _Components(g.n)
    kept: set[Edge] = set()
    for a, b in part.pairs:
        kept.add(edge(a, b))
        comps.union(a, b)
    forest_uf = UnionFind(g.n)
    candidates = [e for e in g.edges
                  if (e[0] in heads and e[1] in side) or (e[1] in heads and e[0] in side)]
    candidates.sort(key=lambda e: (-(w[e[0]] + w[e[1]]), e))
    for u, v in candidates:
        if forest_uf.union(u, v):
            kept.add((u, v))
            comps.union(u, v)
    state = ForestState(kept, comps, part.pairs)
    edge_count: dict[int, int] = {}
    for u, v in kept:
        r = comps.find(u)
        edge_count[r] = edge_count.get(r, 0) + 1
    for i, (a, b) in enumerate(part.pairs):
        if edge_count[comps.find(a)] == 1:
            state.isolated.add(i)
    for r, c in edge_count.items():
        if c >= 2:
            comps.mark_settled(r)
    return state


def absorb_isolated(g: VertexWeightedGraph, part: AbxPartition,
                    state: ForestState) -> ForestState:
    """Attach every isolated matched pair through tail vertices.

    Walking from an isolated pair's head: merge into a settled component when
    a settled tail is adjacent, chain onto another isolated pair otherwise,
    and on reaching a tail of the growing chain close the cycle and drop its
    lightest matched edge. Afterwards every component is settled.
    """
    w = g.weights
    pairs = state.pairs
    pair_at_tail = {b: i for i, (a, b) in enumerate(pairs)}
    for start in sorted(state.isolated):
        if start not in state.isolated:
            continue
        chain = [start]
        chain_set = {start}
        state.isolated.discard(start)
        while True:
            head, tail = pairs[chain[-1]]
            settled_nbr = isolated_nbr = inchain_nbr = None
            for u in g.adj[head]:
                if u == tail:
                    continue
                j = pair_at_tail.get(u)
                if j is None:
                    raise StructureError(
                        f"isolated head {head} adjacent to non-tail {u}; "
                        "the head-side forest should have absorbed it")
                if j in chain_set:
                    if inchain_nbr is None:
                        inchain_nbr = u
                elif j in state.isolated:
                    if isolated_nbr is None:
                        isolated_nbr = u
                elif state.comps.is_settled(u):
                    if settled_nbr is None:
                        settled_nbr = u
                else:
                    raise StructureError(
                        f"tail {u} is neither settled, isolated, nor on the chain")
            if settled_nbr is not None:
                state.kept.add(edge(head, settled_nbr))
                state.comps.union(head, settled_nbr)
                break
            if isolated_nbr is not None:
                j = pair_at_tail[isolated_nbr]
                state.kept.add(edge(head, isolated_nbr))
                state.comps.union(head, isolated_nbr)
                state.isolated.discard(j)
                chain.append(j)
                chain_set.add(j)
                continue
            if inchain_nbr is not None:
                state.kept.add(edge(head, inchain_nbr))
                state.comps.union(head, inchain_nbr)
                first = chain.index(pair_at_tail[inchain_nbr])
                cycle = chain[first:]
                drop = min(cycle, key=lambda i: (w[pairs[i][0]] + w[pairs[i][1]], i))
                state.kept.remove(edge(*pairs[drop]))
                break
            raise StructureError(
                f"head {head} of an isolated pair has no eligible neighbor")
        state.comps.mark_settled(pairs[chain[0]][0])
    _assert_components_settled(g, state)
    return state


def _assert_components_settled(g: VertexWeightedGraph, state: ForestState) -> None:
    # Per component: twice the weight of its degree->=2 vertices must cover
    # the total weight of the matched pairs living inside it.
    w = g.weights
    deg: dict[int, int] = {}
    for u, v in state.kept:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    internal: dict[int, int] = {}
    for v, d in deg.items():
        if d >= 2:
            r = state.comps.find(v)
            internal[r] = internal.get(r, 0) + w[v]
    matched: dict[int, int] = {}
    for a, b in state.pairs:
        r = state.comps.find(a)
        matched[r] = matched.get(r, 0) + w[a] + w[b]
    for r, mw in matched.items():
        if 2 * internal.get(r, 0) < mw:
            raise StructureError(
                f"component of {r} not settled: internal {internal.get(r, 0)}, matched {mw}")


def connect_forest(g: VertexWeightedGraph, state: ForestState) -> SpanningTree:
    """Join the settled components into a spanning tree, lowest edges first."""
    if not is_connected(g):
        raise DisconnectedGraphError("cannot span a disconnected graph")
    uf = UnionFind(g.n)
    chosen = set(state.kept)
    for u, v in chosen:
        uf.union(u, v)
    for u, v in g.edges:
        if uf.union(u, v):
            chosen.add((u, v))
    return spanning_tree(g, chosen)


def tree_to_matching(g: VertexWeightedGraph, tree: SpanningTree) -> Matching:
    """Extract a matching whose lifted weight covers the tree's objective.

    Root at an internal vertex, repeatedly take the unmarked internal-internal
    edge closest to the root, then absorb the remaining unmarked edges; each
    chosen edge carries the weight of the internal vertices it retires.
    """
    w = g.weights
    deg = [0] * g.n
    adj: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for u, v in tree.edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].append(v)
        adj[v].append(u)
    internal = [deg[v] >= 2 for v in range(g.n)]
    if not any(internal):
        return Matching((), 0)
    root = internal.index(True)
    depth = {root: 0}
    order = [root]
    for v in order:
        for u in sorted(adj[v]):
            if u not in depth:
                depth[u] = depth[v] + 1
                order.append(u)
    edges = sorted(tree.edges, key=lambda e: (min(depth[e[0]], depth[e[1]]), e))
    used = [False] * g.n
    chosen: list[Edge] = []
    for u, v in edges:
        if internal[u] and internal[v] and not used[u] and not used[v]:
            used[u] = used[v] = True
            chosen.append((u, v))
    for u, v in edges:
        if not used[u] and not used[v]:
            used[u] = used[v] = True
            chosen.append((u, v))
    chosen.sort()
    return Matching(tuple(chosen), sum(w[u] + w[v] for u, v in chosen))


def upper_bound_certificate(g: VertexWeightedGraph) -> int:
    """Matching-weight upper bound on the optimum (leaf weights zeroed first)."""
    normalized, _ = normalize_leaf_weights(g)
    return max_weight_matching(normalized).weight


def approx_half(g: VertexWeightedGraph) -> tuple[SpanningTree, RatioCertificate]:
    """1/2-approximation; certifies 2*w(T) >= w(M) in exact integers."""
    if not is_connected(g):
        raise DisconnectedGraphError("approx_half requires a connected graph")
    normalized, _ = normalize_leaf_weights(g)
    matching = max_weight_matching(normalized)
    part = partition_abx(normalized, matching)
    state = build_h0(normalized, part)
    state = absorb_isolated(normalized, part, state)
    tree = connect_forest(normalized, state)
    cert = RatioCertificate(
        tree_weight=internal_weight(normalized, tree),
        upper_bound=matching.weight,
        ratio=(1, 2),
        algorithm="half",
    ).check()
    return tree, cert
