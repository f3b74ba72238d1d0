"""7/12-approximation for maximum-weight internal spanning trees on claw-free
graphs: reduce small hanging components behind cut vertices, build the staged
working subgraph from a maximum-weight matching, settle every component at
the 2/3 level, interconnect heaviest-first, and splice the reductions back.
"""

from __future__ import annotations

from ..certify import RatioCertificate
from ..errors import (CertificateViolationError, DisconnectedGraphError,
                      NotClawFreeError)
from ..graphs import (SpanningTree, VertexWeightedGraph, find_claw, internal_weight,
                      is_connected, normalize_leaf_weights, spanning_tree)
from ..matching import max_weight_matching
from ..oracle import OracleBudget, exact_mwist
from .interconnect import interconnect
from .reduction import apply_operation1, undo_operation1
from .settle import COVERAGE, SettledTree, reset_coverage, settle
from .stages import Component, StageReport, build_stages

__all__ = [
    "approx_7_12", "build_stages", "settle", "interconnect",
    "apply_operation1", "undo_operation1", "Component", "StageReport",
    "SettledTree", "COVERAGE", "reset_coverage",
]

MIN_VERTICES = 5


def approx_7_12(g: VertexWeightedGraph) -> tuple[SpanningTree, RatioCertificate]:
    """Claw-free 7/12-approximation; certifies 12*w(T) >= 7*bound exactly.

    The bound is the matching weight on the fully reduced graph plus the
    exact weight recovered by the reductions; it dominates the optimum.
    Instances that normalize or reduce to fewer than five vertices are solved
    exactly instead (the construction assumes at least five), yielding a
    certificate with ratio 1/1.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("approx_7_12 requires a connected graph")
    claw = find_claw(g)
    if claw is not None:
        raise NotClawFreeError(claw)
    normalized, _ = normalize_leaf_weights(g)

    if normalized.n < MIN_VERTICES:
        tree, opt = exact_mwist(normalized, OracleBudget(max_vertices=MIN_VERTICES))
        cert = RatioCertificate(opt, opt, (1, 1), optimum=opt,
                                algorithm="exact-fallback").check()
        return tree, cert

    reduced, records = apply_operation1(normalized)
    recovered = sum(r.local_weight for r in records)

    if reduced.n < MIN_VERTICES:
        tree_red, opt_red = exact_mwist(reduced, OracleBudget(max_vertices=MIN_VERTICES))
        full = undo_operation1(tree_red.edges, records)
        tree = spanning_tree(normalized, full)
        w_final = internal_weight(normalized, tree)
        if w_final != opt_red + recovered:
            raise CertificateViolationError(
                f"splice mismatch: {w_final} != {opt_red} + {recovered}")
        cert = RatioCertificate(w_final, w_final, (1, 1), optimum=w_final,
                                algorithm="exact-fallback").check()
        return tree, cert

    matching = max_weight_matching(reduced)
    components, _report = build_stages(reduced, matching)
    settled = [settle(reduced, comp) for comp in components]
    tree_red = interconnect(reduced, settled)
    w_red = internal_weight(reduced, tree_red)
    if 12 * w_red < 7 * matching.weight:
        raise CertificateViolationError(
            f"reduced-graph bound violated: 12*{w_red} < 7*{matching.weight}")

    full = undo_operation1(tree_red.edges, records)
    tree = spanning_tree(normalized, full)
    w_final = internal_weight(normalized, tree)
    if w_final != w_red + recovered:
        raise CertificateViolationError(
            f"splice mismatch: {w_final} != {w_red} + {recovered}")
    cert = RatioCertificate(w_final, matching.weight + recovered, (7, 12),
                            algorithm="clawfree712").check()
    return tree, cert
