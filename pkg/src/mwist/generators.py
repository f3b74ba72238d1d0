"""Deterministic instance generators.

Families:

* ``random_gnm``  - connected G(n, m), resampled on disconnection
* ``line_graph``  - line graph of a random connected base G(n, m); claw-free
* ``planted_hangers`` - random core with small components hung behind cut
  vertices, so the reduction pass always finds work
* ``path`` / ``cycle`` / ``star`` - fixed shapes

Weight distributions: ``uniform:lo:hi``, ``zipf:s`` (power-law, capped), and
``zeroheavy:p`` (weight 0 with probability p, else uniform 1..9). Everything
is driven by one explicit seed; equal (spec, seed) reproduces the instance
byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import GraphFormatError, RetriesExhaustedError
from .graphs import VertexWeightedGraph, is_connected
from .util import edge

FAMILIES = ("random_gnm", "line_graph", "planted_hangers", "path", "cycle", "star")
MAX_RETRIES = 500
ZIPF_CAP = 100_000


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    m: int | None = None
    weights: str = "uniform:0:9"
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GraphFormatError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise GraphFormatError("n must be positive")
        if self.m is not None:
            lo, hi = self.n - 1, self.n * (self.n - 1) // 2
            if not lo <= self.m <= hi:
                raise GraphFormatError(f"m={self.m} outside [{lo}, {hi}] for n={self.n}")
        _parse_weights(self.weights)  # validate early


def _parse_weights(spec: str):
    parts = spec.split(":")
    kind = parts[0]
    if kind == "uniform" and len(parts) == 3:
        lo, hi = int(parts[1]), int(parts[2])
        if not 0 <= lo <= hi:
            raise GraphFormatError(f"bad uniform range {spec!r}")
        return lambda rng: rng.randint(lo, hi)
    if kind == "zipf" and len(parts) == 2:
        s = float(parts[1])
        if s <= 1.0:
            raise GraphFormatError("zipf exponent must exceed 1")

        def draw(rng: random.Random) -> int:
            # inverse-transform on a truncated power law
            while True:
                k = int(rng.paretovariate(s - 1.0))
                if 1 <= k <= ZIPF_CAP:
                    return k
        return draw
    if kind == "zeroheavy" and len(parts) == 2:
        p = float(parts[1])
        if not 0.0 <= p <= 1.0:
            raise GraphFormatError("zeroheavy probability outside [0, 1]")
        return lambda rng: 0 if rng.random() < p else rng.randint(1, 9)
    raise GraphFormatError(f"unknown weight distribution {spec!r}")


def _random_connected_edges(rng: random.Random, n: int, m: int) -> list[tuple[int, int]]:
    if n == 1:
        return []
    # Rejection-sample plain G(n, m) first; sparse regimes rarely connect, so
    # after a bounded number of tries seed a random spanning tree instead and
    # fill up with random extra edges (same rng stream, still deterministic).
    for _ in range(min(MAX_RETRIES, 50)):
        pool = list(combinations(range(n), 2))
        rng.shuffle(pool)
        edges = pool[:m]
        probe = VertexWeightedGraph(n, [0] * n, edges)
        if is_connected(probe):
            return sorted(edges)
    order = list(range(n))
    rng.shuffle(order)
    edges_set = {edge(order[i], order[rng.randrange(i)]) for i in range(1, n)}
    pool = [e for e in combinations(range(n), 2) if e not in edges_set]
    rng.shuffle(pool)
    edges_set.update(pool[:m - len(edges_set)])
    return sorted(edges_set)


def _line_graph_edges(base_edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out = []
    for i, e in enumerate(base_edges):
        for j in range(i + 1, len(base_edges)):
            f = base_edges[j]
            if e[0] in f or e[1] in f:
                out.append((i, j))
    return out


def _planted_hangers(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Core plus 2-4 vertex gadgets attached to single cut vertices."""
    core = max(2, min(n - 2, rng.randint(2, max(2, n // 2))))
    edges = set()
    for i in range(1, core):
        edges.add(edge(i, rng.randrange(i)))
    for _ in range(core // 2):
        u, v = rng.randrange(core), rng.randrange(core)
        if u != v:
            edges.add(edge(u, v))
    total = core
    while total + 2 <= n:
        size = rng.choice([2, 3, 4])
        size = min(size, n - total)
        if size < 2:
            break
        anchor = rng.randrange(core)
        ids = list(range(total, total + size))
        total += size
        for k in range(1, size):
            edges.add(edge(ids[k], ids[rng.randrange(k)]))
        for _ in range(rng.randint(0, size)):
            a, b = rng.choice(ids), rng.choice(ids)
            if a != b:
                edges.add(edge(a, b))
        for v in ids[:rng.randint(1, 2)]:
            edges.add(edge(anchor, v))
    # Leftover vertices become pendants on the core.
    for v in range(total, n):
        edges.add(edge(v, rng.randrange(core)))
    return sorted(edges)


def generate(spec: GenSpec) -> VertexWeightedGraph:
    """Instance for the given spec; deterministic in (spec, seed)."""
    # A string seed hashes via SHA-512, stable across processes.
    rng = random.Random(f"{spec.seed}|{spec.family}|{spec.n}|{spec.m}|{spec.weights}")
    draw = _parse_weights(spec.weights)
    fam, n = spec.family, spec.n
    if fam == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif fam == "cycle":
        if n < 3:
            raise GraphFormatError("cycle needs n >= 3")
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif fam == "star":
        edges = [(0, i) for i in range(1, n)]
    elif fam == "random_gnm":
        m = spec.m if spec.m is not None else min(2 * n, n * (n - 1) // 2)
        edges = _random_connected_edges(rng, n, m)
    elif fam == "line_graph":
        # n, m describe the base graph; the instance is its line graph.
        m = spec.m if spec.m is not None else min(2 * n, n * (n - 1) // 2)
        base = _random_connected_edges(rng, n, m)
        edges = _line_graph_edges(base)
        n = len(base)
    elif fam == "planted_hangers":
        if n < 4:
            raise GraphFormatError("planted_hangers needs n >= 4")
        edges = _planted_hangers(rng, n)
    else:  # pragma: no cover - guarded by GenSpec
        raise GraphFormatError(f"unknown family {fam!r}")
    weights = [draw(rng) for _ in range(n)]
    g = VertexWeightedGraph(n, weights, edges)
    if not is_connected(g):
        raise RetriesExhaustedError(f"{fam} produced a disconnected instance")
    return g
