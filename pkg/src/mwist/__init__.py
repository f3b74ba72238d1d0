"""Approximation algorithms for the maximum-weight internal spanning tree
problem: a matching-based 1/2-approximation for general graphs and a
7/12-approximation for claw-free graphs, with exact oracles, instance
generators, and a certificate-validating benchmark harness.
"""

from .certify import RatioCertificate
from .clawfree import approx_7_12
from .graphs import (SpanningTree, VertexWeightedGraph, internal_weight,
                     is_claw_free, is_connected, is_spanning_tree,
                     lift_edge_weights, load_graph, normalize_leaf_weights,
                     parse_graph, save_graph, spanning_tree)
from .half import approx_half, tree_to_matching, upper_bound_certificate
from .matching import (Matching, brute_force_max_weight_matching,
                       max_cardinality_matching, max_weight_matching)
from .oracle import OracleBudget, enumerate_spanning_trees, exact_mwist

__version__ = "0.1.0"

__all__ = [
    "RatioCertificate", "SpanningTree", "VertexWeightedGraph", "Matching",
    "OracleBudget", "approx_half", "approx_7_12", "internal_weight",
    "is_claw_free", "is_connected", "is_spanning_tree", "lift_edge_weights",
    "load_graph", "normalize_leaf_weights", "parse_graph", "save_graph",
    "spanning_tree", "tree_to_matching", "upper_bound_certificate",
    "max_weight_matching", "max_cardinality_matching",
    "brute_force_max_weight_matching", "enumerate_spanning_trees",
    "exact_mwist",
]
