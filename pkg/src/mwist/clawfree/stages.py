"""Staged construction of the claw-free working subgraph and its components.

Starting from the positive matched pairs (head = heavier endpoint), the
stages add, in order:

1. a maximum-cardinality matching on head-head edges,
2. one link per matched head pair to an adjacent still-isolated head,
3. links from isolated heads to extra (unmatched) vertices, at most two per
   extra vertex,
4. a maximum-cardinality matching on head-tail edges between isolated pairs,
   turning them into paths and cycles, followed by an exchange normalization
   so no path's free tail is adjacent to a head inside its own path,
5. one link per remaining path from its free head to the tail of a main pair
   of a non-path component.

Each step's structural guarantees (the counting limits that claw-freeness
enforces) are asserted; violations raise StructureError. The result is a set
of typed components: I (two main pairs), II (three), III/IV (one/two pairs on
an extra vertex), VI (pair cycles), with former paths hanging off main tails
as chains.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import StructureError
from ..graphs import VertexWeightedGraph
from ..half import AbxPartition, partition_abx
from ..matching import Matching, max_cardinality_matching
from ..util import Edge, edge


@dataclass
class Arm:
    """One main pair of a component plus the chain hanging off its tail.

    The chain lists pairs top-down: chain[0]'s head links to the main tail,
    chain[k]'s head links to chain[k-1]'s tail, and chain[-1]'s tail is the
    arm's end tail (the vertex playing the tail role in the settling step).
    """

    head: int
    tail: int
    chain: list[tuple[int, int]] = field(default_factory=list)

    @property
    def end_tail(self) -> int:
        return self.chain[-1][1] if self.chain else self.tail

    @property
    def end_head(self) -> int:
        """Matched partner of the end tail."""
        return self.chain[-1][0] if self.chain else self.head

    def pairs(self) -> list[tuple[int, int]]:
        return [(self.head, self.tail)] + list(self.chain)

    def path_down(self) -> list[int]:
        """Vertices from the main head down to the end tail."""
        seq = [self.head, self.tail]
        for h, t in self.chain:
            seq.extend((h, t))
        return seq

    def edges(self) -> list[Edge]:
        out = [edge(self.head, self.tail)]
        prev_tail = self.tail
        for h, t in self.chain:
            out.append(edge(prev_tail, h))
            out.append(edge(h, t))
            prev_tail = t
        return out


@dataclass
class Component:
    """A typed component of the final working subgraph."""

    kind: str  # "I" | "II" | "III" | "IV" | "VI"
    arms: list[Arm] = field(default_factory=list)  # II: in head-path order
    x_vertex: int | None = None
    head_edges: list[Edge] = field(default_factory=list)
    cycle_pairs: list[tuple[int, int]] = field(default_factory=list)  # VI only
    cycle_links: list[Edge] = field(default_factory=list)

    def pairs(self) -> list[tuple[int, int]]:
        if self.kind == "VI":
            return list(self.cycle_pairs)
        out = []
        for arm in self.arms:
            out.extend(arm.pairs())
        return out

    def vertices(self) -> frozenset[int]:
        verts = {v for p in self.pairs() for v in p}
        if self.x_vertex is not None:
            verts.add(self.x_vertex)
        return frozenset(verts)

    def pair_weight(self, g: VertexWeightedGraph) -> int:
        w = g.weights
        return sum(w[h] + w[t] for h, t in self.pairs())

    def edges(self) -> list[Edge]:
        """The component's own working edges: a tree for I-IV, a cycle for VI."""
        if self.kind == "VI":
            out = [edge(h, t) for h, t in self.cycle_pairs]
            out.extend(self.cycle_links)
            return out
        out = []
        for arm in self.arms:
            out.extend(arm.edges())
        out.extend(self.head_edges)
        return out


@dataclass
class StageReport:
    """Intermediate artifacts of the construction, mainly for tests."""

    partition: AbxPartition
    head_matching: tuple[Edge, ...]
    head_links: tuple[Edge, ...]
    x_links: tuple[Edge, ...]
    chain_matching: tuple[Edge, ...]
    exchanges: int
    chain_links: tuple[Edge, ...]


def _pair_maps(pairs):
    head_of = {}
    tail_of = {}
    for i, (h, t) in enumerate(pairs):
        head_of[h] = i
        tail_of[t] = i
    return head_of, tail_of


def build_stages(g: VertexWeightedGraph, matching: Matching
                 ) -> tuple[list[Component], StageReport]:
    """Construct and type all components; g must be claw-free and reduced."""
    w = g.weights
    part = partition_abx(g, matching)
    pairs = list(part.pairs)
    head_of, tail_of = _pair_maps(pairs)
    heads = set(head_of)
    extras = part.extras

    # Stage 1: maximum-cardinality matching among heads.
    head_head = [e for e in g.edges if e[0] in heads and e[1] in heads]
    maa = max_cardinality_matching(g, within=head_head) if head_head else Matching((), 0)
    matched_head: dict[int, int] = {}
    for a, b in maa.edges:
        matched_head[a] = b
        matched_head[b] = a
    isolated = [i for i, (h, t) in enumerate(pairs) if h not in matched_head]

    # Stage 2: at most one isolated head may attach to each matched head pair.
    adjacent_isolated: dict[Edge, list[int]] = {e: [] for e in maa.edges}
    for i in isolated:
        h = pairs[i][0]
        seen = set()
        for u in g.adj[h]:
            if u in matched_head:
                e = edge(u, matched_head[u])
                if e not in seen:
                    seen.add(e)
                    adjacent_isolated[e].append(i)
    for e, cands in adjacent_isolated.items():
        if len(cands) > 1:
            raise StructureError(
                f"two isolated heads {cands} adjacent to matched head pair {e}; "
                "claw-freeness violated")
    head_links: list[Edge] = []
    link_of_pair: dict[Edge, tuple[int, int]] = {}  # head pair -> (pair idx, endpoint used)
    attached_to: dict[int, Edge] = {}  # isolated pair index -> head pair it joined
    for i in isolated:
        h = pairs[i][0]
        for u in g.adj[h]:
            if u in matched_head:
                e = edge(u, matched_head[u])
                if e not in link_of_pair:
                    link_of_pair[e] = (i, u)
                    attached_to[i] = e
                    head_links.append(edge(h, u))
                    break
    isolated = [i for i in isolated if i not in attached_to]

    # After stage 2 no isolated head may touch another head at all.
    for i in isolated:
        h = pairs[i][0]
        for u in g.adj[h]:
            if u in heads:
                raise StructureError(
                    f"isolated head {h} still adjacent to head {u} after attachments")

    # Stage 3: isolated heads attach to extra vertices, at most two per vertex.
    x_adjacent: dict[int, list[int]] = {}
    for i in isolated:
        h = pairs[i][0]
        for u in g.adj[h]:
            if u in extras:
                x_adjacent.setdefault(u, []).append(i)
    for x, cands in x_adjacent.items():
        if len(cands) > 2:
            raise StructureError(
                f"extra vertex {x} adjacent to {len(cands)} isolated heads; "
                "claw-freeness violated")
    x_links: list[Edge] = []
    x_members: dict[int, list[int]] = {}
    for i in isolated:
        h = pairs[i][0]
        for u in g.adj[h]:
            if u in extras:
                x_links.append(edge(h, u))
                x_members.setdefault(u, []).append(i)
                break
    attached_x = {i for members in x_members.values() for i in members}
    isolated = [i for i in isolated if i not in attached_x]

    # Stage 4: head-tail matching among the remaining isolated pairs.
    iso_set = set(isolated)
    hh = {pairs[i][0]: i for i in iso_set}
    tt = {pairs[i][1]: i for i in iso_set}
    eab0 = []
    for u, v in g.edges:
        i = hh.get(u)
        j = tt.get(v)
        if i is not None and j is not None and i != j:
            eab0.append((u, v))
            continue
        i = hh.get(v)
        j = tt.get(u)
        if i is not None and j is not None and i != j:
            eab0.append((u, v))
    mab = max_cardinality_matching(g, within=eab0) if eab0 else Matching((), 0)
    succ: dict[int, int] = {}  # pair -> pair whose tail its head links to
    pred: dict[int, int] = {}
    chain_matching: list[Edge] = []
    for a, b in mab.edges:
        if a in hh and b in tt:
            i, j = hh[a], tt[b]
        else:
            i, j = hh[b], tt[a]
        succ[i] = j
        pred[j] = i
        chain_matching.append(edge(a, b))

    # Collect paths and cycles over the isolated pairs.
    paths: list[list[int]] = []
    cycles: list[list[int]] = []
    seen: set[int] = set()
    for i in sorted(iso_set):
        if i in seen:
            continue
        if i not in pred:  # path start: free tail
            seq = [i]
            seen.add(i)
            cur = i
            while cur in succ:
                cur = succ[cur]
                seq.append(cur)
                seen.add(cur)
            paths.append(seq)
    for i in sorted(iso_set):
        if i in seen:
            continue
        seq = [i]
        seen.add(i)
        cur = succ[i]
        while cur != i:
            seq.append(cur)
            seen.add(cur)
            cur = succ[cur]
        cycles.append(seq)

    # Exchange normalization: a path's free tail must not see a head inside
    # its own path; otherwise split off a cycle and keep normalizing.
    exchanges = 0
    normalized_paths: list[list[int]] = []
    for seq in paths:
        while True:
            free_tail = pairs[seq[0]][1]
            hit = None
            for k in range(1, len(seq)):
                if g.has_edge(free_tail, pairs[seq[k]][0]):
                    hit = k
                    break
            if hit is None:
                normalized_paths.append(seq)
                break
            if hit == len(seq) - 1:
                raise StructureError(
                    "free tail adjacent to its path's free head; "
                    "the head-tail matching was not maximum")
            exchanges += 1
            cycles.append(seq[:hit + 1])
            seq = seq[hit + 1:]

    # Assemble components of stages 1-3.
    components: list[Component] = []
    comp_of_pair: dict[int, Component] = {}

    def new_component(kind, arm_pairs, x=None, head_edges=()):
        comp = Component(kind=kind,
                         arms=[Arm(pairs[i][0], pairs[i][1]) for i in arm_pairs],
                         x_vertex=x, head_edges=list(head_edges))
        for i in arm_pairs:
            comp_of_pair[i] = comp
        components.append(comp)
        return comp

    for a, b in maa.edges:
        i, j = head_of[a], head_of[b]
        e = edge(a, b)
        hit = link_of_pair.get(e)
        if hit is None:
            new_component("I", [i, j], head_edges=[e])
        else:
            # head path: attached - joint - other
            k, ha = hit
            joint = pairs[k][0]
            hb = b if ha == a else a
            order = [k, head_of[ha], head_of[hb]]
            new_component("II", order, head_edges=[edge(joint, ha), e])
    for x, members in sorted(x_members.items()):
        if len(members) == 1:
            new_component("III", members, x=x,
                          head_edges=[edge(pairs[members[0]][0], x)])
        else:
            new_component("IV", sorted(members), x=x,
                          head_edges=[edge(pairs[i][0], x) for i in sorted(members)])
    for seq in cycles:
        comp = Component(kind="VI",
                         cycle_pairs=[pairs[i] for i in seq],
                         cycle_links=[edge(pairs[seq[k]][0], pairs[seq[(k + 1) % len(seq)]][1])
                                      for k in range(len(seq))])
        for i in seq:
            comp_of_pair[i] = comp
        components.append(comp)

    # Stage 5: attach each remaining path's free head to a main tail of a
    # non-path component; claw-freeness allows at most one path per tail.
    main_tail_arm: dict[int, tuple[Component, Arm]] = {}
    for comp in components:
        if comp.kind in ("I", "II", "III", "IV"):
            for arm in comp.arms:
                main_tail_arm[arm.tail] = (comp, arm)
    target_count: dict[int, int] = {}
    for seq in normalized_paths:
        free_head = pairs[seq[-1]][0]
        for u in g.adj[free_head]:
            if u in main_tail_arm:
                target_count[u] = target_count.get(u, 0) + 1
    for u, c in target_count.items():
        if c > 1:
            raise StructureError(
                f"main tail {u} adjacent to {c} free path heads; claw-freeness violated")
    chain_links: list[Edge] = []
    for seq in sorted(normalized_paths, key=lambda s: s[0]):
        free_head = pairs[seq[-1]][0]
        target = None
        for u in g.adj[free_head]:
            if u == pairs[seq[-1]][1]:
                continue
            if u in main_tail_arm:
                target = u
                break
            # Any other neighbor contradicts the construction on claw-free
            # input: path/cycle tails, heads, and extras are all excluded.
            raise StructureError(
                f"free path head {free_head} adjacent to {u}, which is not an "
                "available main tail; claw-freeness violated")
        if target is None:
            raise StructureError(
                f"free path head {free_head} has no main-tail neighbor to join")
        comp, arm = main_tail_arm.pop(target)
        chain_links.append(edge(free_head, target))
        # Chain pairs run top-down: nearest to the main tail first.
        arm.chain = [pairs[i] for i in reversed(seq)]
        for i in seq:
            comp_of_pair[i] = comp

    # Every pair must have landed in a component and every head must have
    # degree >= 2 within it.
    for i in range(len(pairs)):
        if i not in comp_of_pair:
            raise StructureError(f"pair {pairs[i]} remained isolated")
    for comp in components:
        deg: dict[int, int] = {}
        for u, v in comp.edges():
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        for h, t in comp.pairs():
            if deg.get(h, 0) < 2:
                raise StructureError(f"head {h} has degree {deg.get(h, 0)} in its component")

    report = StageReport(
        partition=part,
        head_matching=maa.edges,
        head_links=tuple(head_links),
        x_links=tuple(x_links),
        chain_matching=tuple(chain_matching),
        exchanges=exchanges,
        chain_links=tuple(chain_links),
    )
    return components, report
