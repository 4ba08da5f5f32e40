from __future__ import annotations

import random

import pytest

from conftest import base_octagon, base_square, plane_triangle
from circlegraphs.errors import NonPositiveLabel, PatternMismatch
from circlegraphs.fpdata import FixedPointData, todd_genus
from circlegraphs.multigraph import (
    Edge,
    Multigraph,
    cycle_order,
    fixed_point_data,
    graph_from_signed_labels,
    is_isomorphic,
    is_realizable_candidate,
    validate,
)
from circlegraphs.operations import (
    OperationTrace,
    Site,
    apply,
    apply_op1,
    apply_op2,
    apply_op3,
    apply_op4,
    apply_reverse,
    apply_with_inverse,
    find_all_sites,
    find_sites,
    random_trace,
    replay,
    result_label,
)


def labels_in_order(g):
    return [e.label for e in cycle_order(g).edges]


def test_op1_on_square(semifree_square):
    g = apply_op1(semifree_square, "p2")
    validate(g)
    assert sorted(g.vertices) == ["p1", "p2'", "p2''", "p3", "p4"]
    assert Edge("p2'", "p2''", 2) in g.edges
    assert sorted(labels_in_order(g)) == [1, 1, 1, 1, 2]


def test_op1_on_triangle_matches_blow_up_weights(unit_triangle):
    g = apply_op1(unit_triangle, "p2", ("q1", "q2"))
    # blowing up a point with weights {-a, b} gives {-a, a+b} and {-a-b, b}
    assert fixed_point_data(g) == FixedPointData([[1, 2], [-1, 2], [-2, 1], [-1, -2]])
    assert todd_genus(fixed_point_data(g)) == 1


def test_op1_needs_index_one(semifree_square):
    with pytest.raises(PatternMismatch):
        apply_op1(semifree_square, "p1")
    with pytest.raises(PatternMismatch):
        apply_op1(semifree_square, "p2", ("p3", "x"))


def test_op2_inside_octagon(semifree_octagon):
    g = apply_op2(semifree_octagon, ("p5", "p4", 1))
    assert Edge("p5", "p4", 2) in g.edges
    assert sum(e.label for e in g.edges) == 9


def test_op2_arithmetic():
    # p1 <-2- p2 <-3- p3 -2-> p4, closed by p1 -7-> p4
    g = Multigraph(["p1", "p2", "p3", "p4"], [("p2", "p1", 2), ("p3", "p2", 3), ("p3", "p4", 2), ("p1", "p4", 7)])
    assert Edge("p3", "p2", 5) in apply_op2(g, ("p3", "p2", 3)).edges
    unequal = Multigraph(["p1", "p2", "p3", "p4"], [("p2", "p1", 1), ("p3", "p2", 3), ("p3", "p4", 2), ("p1", "p4", 7)])
    with pytest.raises(PatternMismatch):
        apply_op2(unequal, ("p3", "p2", 3))


def test_op3_examples(semifree_octagon):
    g = apply_op3(semifree_octagon, ("p2", "p3", 1))
    assert Edge("p2", "p3", 2) in g.edges
    h = Multigraph(["p1", "p2", "p3", "p4"], [("p1", "p2", 1), ("p2", "p3", 2), ("p4", "p3", 1), ("p1", "p4", 5)])
    assert Edge("p2", "p3", 3) in apply_op3(h, ("p2", "p3", 2)).edges
    with pytest.raises(PatternMismatch):
        apply_op3(semifree_octagon, ("p1", "p9", 1))
    with pytest.raises(PatternMismatch):
        apply_op3(semifree_octagon, ("p1", "p2", 1))


def test_op4_square_to_triangle(semifree_square):
    g = apply_op4(semifree_square, ("p1", "p2", 1), ("p2", "p3", 1))
    assert is_isomorphic(g, plane_triangle(1, 1))
    assert fixed_point_data(g) == FixedPointData([[1, 2], [-1, 1], [-1, -2]])


def test_op4_merge_to_three_edge():
    # labels 1,2,1,2 around p3 <- p4 <- p5 become a 3-edge p5 -> p3
    g = graph_from_signed_labels([1, 2, -1, -2, 1, 3, -1, -4])
    eout = next(e for e in g.edges if e.src == "p4")
    ein = next(e for e in g.edges if e.dst == "p4")
    merged = apply_op4(g, ein, eout)
    assert "p4" not in merged
    assert Edge("p5", "p3", 3) in merged.edges


def test_op4_outer_labels_must_match():
    g = Multigraph(["p1", "p2", "p3", "p4"], [("p1", "p2", 1), ("p2", "p3", 1), ("p4", "p3", 2), ("p1", "p4", 1)])
    with pytest.raises(PatternMismatch):
        apply_op4(g, ("p1", "p2", 1), ("p2", "p3", 1))


def test_reverse_examples(unit_triangle):
    square = apply_reverse(unit_triangle, Site("RevOp4", edges=(("p1", "p3", 2),)))
    assert is_isomorphic(square, base_square())
    # Op1 "after" picture with a=1, b=2
    after = Multigraph(["x", "p", "q", "y"], [("x", "p", 1), ("p", "q", 3), ("q", "y", 2), ("x", "y", 99)])
    contracted = apply_reverse(after, Site("RevOp1", edges=(("p", "q", 3),), new_ids=("r",)))
    assert set(contracted.incident("r")) == {Edge("x", "r", 1), Edge("r", "y", 2)}
    assert contracted.weights("r") == (-1, 2)


def test_rev_op2_undoes_op2(semifree_octagon):
    g = apply_op2(semifree_octagon, ("p5", "p4", 1))
    back = apply_reverse(g, Site("RevOp2", edges=(("p5", "p4", 2),)))
    assert back == semifree_octagon
    with pytest.raises(NonPositiveLabel):
        apply_reverse(semifree_octagon, Site("RevOp2", edges=(("p5", "p4", 1),)))
    with pytest.raises(PatternMismatch):
        apply_reverse(g, Site("Op2", edges=(("p5", "p4", 2),)))


def test_find_sites_counts(semifree_square, unit_triangle, semifree_octagon):
    op4 = find_sites(semifree_square, "Op4")
    assert len(op4) == 2
    for site in op4:
        assert is_isomorphic(apply(semifree_square, site), plane_triangle(1, 1))
    rev4 = find_sites(unit_triangle, "RevOp4")
    assert [s.edge for s in rev4] == [Edge("p1", "p3", 2)]
    assert [s.vertex for s in find_sites(semifree_octagon, "Op1")] == ["p2", "p4", "p6", "p8"]


def test_find_sites_flags_overlap(unit_triangle):
    sites = find_sites(unit_triangle, "Op1")
    assert len(sites) == 1
    assert not sites[0].overlapping
    two = Multigraph(["a", "b"], [("a", "b", 1), ("a", "b", 1)])
    op2 = find_sites(Multigraph(["a", "b", "c"], [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)]), "Op3")
    assert all(s.overlapping for s in op2)
    assert find_sites(two, "Op2") == []


def test_result_label_matches_application(semifree_octagon):
    for site in find_all_sites(semifree_octagon):
        g, inverse = apply_with_inverse(semifree_octagon, site)
        if site.kind in ("Op2", "Op3"):
            assert Edge(site.edge.src, site.edge.dst, result_label(semifree_octagon, site)) in g.edges
        assert inverse.kind == "Rev" + site.kind


def test_inverse_sites_round_trip(semifree_octagon):
    for site in find_all_sites(semifree_octagon):
        g, inverse = apply_with_inverse(semifree_octagon, site)
        back, again = apply_with_inverse(g, inverse)
        assert back == semifree_octagon
        assert again == site or site.kind == "Op1" and again.vertex == site.vertex


def test_replay_examples(semifree_square):
    trace = OperationTrace(semifree_square, (Site("Op4", edges=(("p1", "p2", 1), ("p2", "p3", 1))),))
    assert is_isomorphic(replay(trace), plane_triangle(1, 1))
    assert replay(OperationTrace(semifree_square)) == semifree_square


def test_replay_octagon_relabeling():
    steps = (
        Site("Op3", edges=(("p2", "p3", 1),)),
        Site("Op2", edges=(("p5", "p4", 1),)),
        Site("Op3", edges=(("p6", "p7", 1),)),
        Site("Op3", edges=(("p6", "p7", 2),)),
    )
    g = replay(OperationTrace(base_octagon(), steps))
    assert labels_in_order(g)[:6] == [1, 2, 1, 2, 1, 3]
    assert is_realizable_candidate(g)


def test_replay_reports_step_index(semifree_square):
    bad = OperationTrace(semifree_square, (Site("Op4", edges=(("p1", "p2", 1), ("p2", "p3", 1))), Site("Op1", vertex="p2")))
    with pytest.raises(PatternMismatch) as info:
        replay(bad)
    assert info.value.step == 1


def test_trace_round_trip(semifree_octagon):
    trace = random_trace(semifree_octagon, 8, random.Random(3))
    assert OperationTrace.loads(trace.dumps()) == trace
    assert replay(OperationTrace.loads(trace.dumps())) == replay(trace)


def test_random_trace_respects_label_bound(semifree_square):
    for seed in range(5):
        trace = random_trace(semifree_square, 12, random.Random(seed), max_label=5)
        g = replay(trace)
        assert g.max_label() <= 5
        assert todd_genus(fixed_point_data(g)) == 1


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        Site("Op9")
