"""Vertex-weighted graphs, structural predicates, and the tree objective.

The instance format used by the CLI and all golden tests is plain text:

    line 1:         n m
    next n lines:   one nonnegative integer weight per vertex
    next m lines:   u v   (0-based endpoints)

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DisconnectedGraphError, GraphFormatError, InvalidTreeError
from .util import Edge, UnionFind, edge


class VertexWeightedGraph:
    """Simple undirected graph with nonnegative integer vertex weights.

    Vertices are 0..n-1. Instances are immutable after construction and safe
    to share across threads.
    """

    __slots__ = ("n", "weights", "adj", "_edges", "_adj_sets")

    def __init__(self, n: int, weights: Sequence[int], edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphFormatError("vertex count must be nonnegative")
        if len(weights) != n:
            raise GraphFormatError(f"expected {n} weights, got {len(weights)}")
        for w in weights:
            if not isinstance(w, int) or isinstance(w, bool) or w < 0:
                raise GraphFormatError(f"weights must be nonnegative integers, got {w!r}")
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            e = edge(u, v)
            if e in seen:
                raise GraphFormatError(f"parallel edge ({u}, {v})")
            seen.add(e)
        self.n = n
        self.weights = tuple(weights)
        self._edges = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        self._adj_sets = tuple(frozenset(nbrs) for nbrs in adj)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        """All edges, canonicalized (low id first) and sorted."""
        return self._edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def total_weight(self) -> int:
        return sum(self.weights)

    def with_weights(self, weights: Sequence[int]) -> "VertexWeightedGraph":
        return VertexWeightedGraph(self.n, weights, self._edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VertexWeightedGraph)
            and self.n == other.n
            and self.weights == other.weights
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((self.n, self.weights, self._edges))

    def __repr__(self) -> str:
        return f"VertexWeightedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SpanningTree:
    """Edge set of a spanning tree; use :func:`spanning_tree` to validate."""

    edges: tuple[Edge, ...]

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


def spanning_tree(g: VertexWeightedGraph, edges: Iterable[tuple[int, int]]) -> SpanningTree:
    """Validate an edge set as a spanning tree of g and wrap it.

    Raises InvalidTreeError if the edge count differs from n-1 or the edges
    do not connect all vertices (acyclicity then follows).
    """
    canon = tuple(sorted(edge(u, v) for u, v in edges))
    if len(canon) != max(g.n - 1, 0):
        raise InvalidTreeError(f"expected {max(g.n - 1, 0)} edges, got {len(canon)}")
    uf = UnionFind(g.n)
    for u, v in canon:
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise InvalidTreeError(f"edge ({u}, {v}) out of range")
        if not g.has_edge(u, v):
            raise InvalidTreeError(f"edge ({u}, {v}) is not an edge of the graph")
        if not uf.union(u, v):
            raise InvalidTreeError(f"edge ({u}, {v}) closes a cycle")
    if uf.components != 1:
        raise InvalidTreeError("edge set does not span the graph")
    return SpanningTree(canon)


def is_spanning_tree(g: VertexWeightedGraph, edges: Iterable[tuple[int, int]]) -> bool:
    try:
        spanning_tree(g, edges)
    except InvalidTreeError:
        return False
    return True


def is_connected(g: VertexWeightedGraph) -> bool:
    if g.n <= 1:
        return True
    uf = UnionFind(g.n)
    for u, v in g.edges:
        uf.union(u, v)
    return uf.components == 1


def internal_weight(g: VertexWeightedGraph, tree: SpanningTree | Iterable[tuple[int, int]]) -> int:
    """Total weight of the internal (degree >= 2) vertices of a spanning tree."""
    if not isinstance(tree, SpanningTree):
        tree = spanning_tree(g, tree)
    deg = [0] * g.n
    for u, v in tree.edges:
        deg[u] += 1
        deg[v] += 1
    w = g.weights
    return sum(w[v] for v in range(g.n) if deg[v] >= 2)


def subtree_internal_weight(g: VertexWeightedGraph, edges: Iterable[tuple[int, int]]) -> int:
    """Weight of degree->=2 vertices in an arbitrary edge subset (no validation)."""
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    w = g.weights
    return sum(w[v] for v, d in deg.items() if d >= 2)


def lift_edge_weights(g: VertexWeightedGraph) -> dict[Edge, int]:
    """Edge weights induced by the vertex weights: w(e) = w(u) + w(v)."""
    w = g.weights
    return {e: w[e[0]] + w[e[1]] for e in g.edges}


def find_claw(g: VertexWeightedGraph) -> Optional[tuple[int, tuple[int, int, int]]]:
    """Find an induced claw: (center, (x, y, z)) pairwise non-adjacent, or None.

    Uses adjacency bitmasks; among any three neighbors of a claw-free vertex
    at least two are adjacent.
    """
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    for c in range(g.n):
        nbrs = g.adj[c]
        if len(nbrs) < 3:
            continue
        cmask = masks[c]
        for x in nbrs:
            # candidates independent from x among c's neighbors
            cand = cmask & ~masks[x] & ~(1 << x)
            if cand.bit_count() < 2:
                continue
            rest = cand
            while rest:
                ybit = rest & -rest
                rest ^= ybit
                y = ybit.bit_length() - 1
                zmask = rest & ~masks[y]
                if zmask:
                    z = (zmask & -zmask).bit_length() - 1
                    return c, (x, y, z)
    return None


def is_claw_free(g: VertexWeightedGraph) -> bool:
    return find_claw(g) is None


def find_claw_brute(g: VertexWeightedGraph) -> Optional[tuple[int, tuple[int, int, int]]]:
    """Reference claw search checking all neighbor triples directly."""
    for c in range(g.n):
        for x, y, z in combinations(g.adj[c], 3):
            if not (g.has_edge(x, y) or g.has_edge(x, z) or g.has_edge(y, z)):
                return c, (x, y, z)
    return None


def normalize_leaf_weights(g: VertexWeightedGraph) -> tuple[VertexWeightedGraph, int]:
    """Zero the weights of degree-1 vertices; returns (graph, zeroed total).

    A degree-1 vertex is a leaf in every spanning tree, so no tree objective
    changes; solvers apply this before anything else.
    """
    new_weights = list(g.weights)
    delta = 0
    for v in range(g.n):
        if g.degree(v) == 1 and new_weights[v] != 0:
            delta += new_weights[v]
            new_weights[v] = 0
    if delta == 0:
        return g, 0
    return g.with_weights(new_weights), delta


def parse_graph(text: str, require_connected: bool = True) -> VertexWeightedGraph:
    """Parse the text instance format; see the module docstring."""
    tokens: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            tokens.append((lineno, line))
    if not tokens:
        raise GraphFormatError("empty instance")
    lineno, header = tokens[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphFormatError(f"line {lineno}: expected 'n m'")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected integers in header") from None
    body = tokens[1:]
    if len(body) != n + m:
        raise GraphFormatError(f"expected {n} weight lines and {m} edge lines, got {len(body)}")
    weights = []
    for lineno, line in body[:n]:
        try:
            weights.append(int(line))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: bad weight {line!r}") from None
    edges = []
    for lineno, line in body[n:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v'")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: bad edge {line!r}") from None
    g = VertexWeightedGraph(n, weights, edges)
    if require_connected and not is_connected(g):
        raise DisconnectedGraphError("instance graph is disconnected")
    return g


def format_graph(g: VertexWeightedGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(str(w) for w in g.weights)
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def load_graph(path, require_connected: bool = True) -> VertexWeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read(), require_connected=require_connected)


def save_graph(g: VertexWeightedGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_graph(g))
