"""Settle-machine coverage on planted component structures.

Each instance is verified claw-free, irreducible, and connected; the planted
matching is what the solver computes, the staged construction produces the
intended component shape, and settling dispatches the intended case branch.
Finally the full solver must certify the instance end to end.
"""

import pytest

from mwist.clawfree import approx_7_12
from mwist.clawfree.reduction import find_reduction
from mwist.clawfree.settle import COVERAGE, reset_coverage, settle
from mwist.clawfree.stages import build_stages
from mwist.errors import StructureError
from mwist.graphs import VertexWeightedGraph, is_claw_free
from mwist.matching import max_weight_matching
from mwist.oracle import exact_mwist

# name -> (weights, edges, expected branch prefixes)
CASES = {
    "I.2": ([9, 2, 9, 2, 9, 2, 9, 3, 9, 2, 9, 2, 0],
            [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11),
             (0, 2), (8, 10), (1, 4), (5, 6), (5, 7), (6, 9),
             (3, 12), (11, 12)],
            {"I.2", "I.1"}),
    "II.2": ([18, 3, 17, 3, 16, 2, 20, 4, 20, 5, 9, 2, 9, 2, 0],
             [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13),
              (0, 2), (2, 4), (3, 4), (1, 6), (7, 8), (7, 9),
              (8, 11), (10, 12), (5, 14), (13, 14)],
             {"II.2", "I.1"}),
    "II.4": ([20, 2, 17, 2, 16, 0, 19, 3],
             [(0, 1), (2, 3), (4, 5), (6, 7),
              (0, 2), (2, 4), (3, 4), (1, 6), (0, 7), (1, 7), (5, 6)],
             {"II.4.deep"}),
    "II.M4.2": ([20, 3, 16, 0, 15, 0, 21, 4],
                [(0, 1), (2, 3), (4, 5), (6, 7),
                 (0, 2), (0, 4), (2, 4), (1, 6), (0, 7), (1, 7), (6, 3)],
                {"II.M4.2"}),
    "III.2": ([9, 2, 9, 2, 9, 3, 9, 2, 9, 2, 0],
              [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9),
               (0, 10), (1, 2), (3, 4), (3, 5), (4, 7), (6, 8), (9, 10)],
              {"III.2", "I.1"}),
    "III.3": ([9, 2, 9, 3, 9, 2, 9, 2, 0],
              [(0, 1), (2, 3), (4, 5), (6, 7),
               (0, 8), (1, 2), (1, 3), (2, 5), (4, 6), (7, 8)],
              {"III.3", "I.1"}),
    "IV.2": ([20, 2, 17, 2, 19, 2, 19, 3, 15, 2, 0, 15, 2],
             [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (11, 12),
              (0, 10), (2, 10), (1, 4), (5, 6), (5, 7),
              (6, 9), (8, 11), (3, 12)],
             {"IV.2", "I.1"}),
    "IV.3": ([20, 3, 17, 2, 19, 4, 15, 2, 0, 15, 2],
             [(0, 1), (2, 3), (4, 5), (6, 7), (9, 10),
              (0, 8), (2, 8), (1, 4), (1, 5), (4, 7), (6, 9), (3, 10)],
             {"IV.3", "I.1"}),
    "IV.4": ([20, 3, 17, 2, 25, 2, 26, 4, 0, 15, 2, 14, 2],
             [(0, 1), (2, 3), (4, 5), (6, 7), (9, 10), (11, 12),
              (0, 8), (2, 8), (1, 4), (5, 6), (0, 7),
              (9, 11), (1, 8), (5, 10), (4, 10), (3, 12)],
             {"IV.4", "I.1"}),
    "IV.5": ([20, 2, 17, 2, 25, 4, 0, 15, 2, 14, 2, 13, 2],
             [(0, 1), (2, 3), (4, 5), (7, 8), (9, 10), (11, 12),
              (0, 6), (2, 6), (1, 4), (5, 6), (0, 5), (1, 5),
              (7, 9), (9, 11), (10, 11), (3, 8), (4, 10)],
             {"IV.5", "II.1"}),
    "IV.7": ([20, 2, 17, 2, 19, 3, 18, 2, 0, 25, 4],
             [(0, 1), (2, 3), (4, 5), (6, 7), (9, 10),
              (0, 8), (2, 8), (1, 9), (3, 4), (5, 6), (6, 10), (5, 7)],
             {"IV.7"}),
    "IV.8": ([20, 4, 17, 2, 0, 15, 2, 15, 2],
             [(0, 1), (2, 3), (5, 6), (7, 8),
              (0, 4), (2, 4), (1, 4), (0, 6), (5, 7), (3, 8)],
             {"IV.8", "I.1"}),
    "VI.two": ([9, 3, 8, 2, 9, 2, 9, 2],
               [(0, 1), (2, 3), (0, 3), (1, 2), (1, 3),
                (4, 5), (6, 7), (4, 6), (5, 6),
                (0, 5), (2, 7)],
               {"VI.two", "I.1"}),
}


def _build(name):
    weights, edges, expected = CASES[name]
    g = VertexWeightedGraph(len(weights), weights, edges)
    return g, expected


@pytest.mark.parametrize("name", sorted(CASES))
def test_case_dispatch(name):
    g, expected = _build(name)
    assert is_claw_free(g), name
    assert find_reduction(g) is None, name
    comps, _report = build_stages(g, max_weight_matching(g))
    reset_coverage()
    settled = [settle(g, comp) for comp in comps]
    hit = set(COVERAGE)
    for want in expected:
        assert any(b == want or b.startswith(want + ".") for b in hit), \
            f"{name}: wanted {want}, dispatched {sorted(hit)}"
    for s in settled:
        assert 3 * s.counted >= 2 * s.pair_weight


@pytest.mark.parametrize("name", sorted(CASES))
def test_full_solver_on_case_instances(name):
    g, _expected = _build(name)
    tree, cert = approx_7_12(g)
    assert cert.holds()
    if g.n <= 10:
        _t, opt = exact_mwist(g)
        assert 12 * cert.tree_weight >= 7 * opt


def test_case_exhaustion_is_loud():
    # A would-be type-I component whose heavy tail has no usable structure:
    # claw violation upstream must raise, never settle silently.
    g = VertexWeightedGraph(
        8, [9, 2, 9, 2, 9, 2, 9, 2],
        [(0, 1), (2, 3), (4, 5), (6, 7), (0, 2), (0, 4), (0, 6)])
    with pytest.raises(StructureError):
        build_stages(g, max_weight_matching(g))
