"""Small shared helpers: canonical edges and union-find."""

from __future__ import annotations

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Canonical undirected edge: low vertex id first."""
    return (u, v) if u <= v else (v, u)


class UnionFind:
    """Union-find over 0..n-1 with path compression and union by size."""

    __slots__ = ("parent", "size", "components")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; returns False if already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True

    def joined(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


class RollbackUnionFind:
    """Union-find without path compression; unions can be undone in LIFO order."""

    __slots__ = ("parent", "rank", "trail")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.trail: list[tuple[int, int]] = []

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        bump = 0
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
            bump = 1
        self.trail.append((rb, bump))
        return True

    def rollback(self) -> None:
        """Undo the most recent successful union."""
        rb, bump = self.trail.pop()
        ra = self.parent[rb]
        self.parent[rb] = rb
        if bump:
            self.rank[ra] -= 1
