from __future__ import annotations

import pytest

from conftest import base_octagon, base_square, hirzebruch_square_pos, hirzebruch_square_neg
from circlegraphs.catalog import (
    GENERATORS,
    blow_up,
    cp2,
    entry,
    hirzebruch,
    hirzebruch_weights,
    min_fixed_points,
    odd_chain,
    odd_chain_graph,
    semifree_base_graph,
    square,
)
from circlegraphs.errors import DegenerateWeight, NotCoprime, PatternMismatch
from circlegraphs.fpdata import FixedPointData, chern_numbers_4d, index_counts, invariant_report, todd_genus
from circlegraphs.multigraph import cycle_order, fixed_point_data, has_equal_modulo_property, is_isomorphic, is_realizable_candidate
from circlegraphs.plumbing import base_sequence, derived_graph, realize, s1_weights
from circlegraphs.reduction import reduce_to_semifree


def test_cp2_examples():
    assert sorted(e.label for e in cp2(1, 1).edges) == [1, 1, 2]
    g = cp2(2, 3)
    assert sorted(e.label for e in g.edges) == [2, 3, 5]
    assert has_equal_modulo_property(g)
    assert fixed_point_data(g) == FixedPointData([[5, 2], [-2, 3], [-3, -5]])
    with pytest.raises(NotCoprime):
        cp2(2, 4)


def test_hirzebruch_shapes():
    g = hirzebruch(1, 3, 2)
    assert g == hirzebruch_square_pos(3, 2, 1)
    assert fixed_point_data(g) == hirzebruch_weights(1, 3, 2)
    h = hirzebruch(2, 3, 2)
    assert h == hirzebruch_square_neg(3, 2, 1)
    assert fixed_point_data(h) == hirzebruch_weights(2, 3, 2)
    # d = 1 with c - nd < 0 keeps the first shape
    assert hirzebruch(3, 1, 1) == hirzebruch_square_pos(1, 1, 2)
    with pytest.raises(DegenerateWeight):
        hirzebruch(3, 3, 1)
    with pytest.raises(NotCoprime):
        hirzebruch(1, 4, 2)


def test_semifree_bases():
    assert semifree_base_graph(1) == base_square()
    assert semifree_base_graph(2) == base_octagon()
    g = semifree_base_graph(3)
    assert len(g.vertices) == 12
    assert index_counts(fixed_point_data(g)) == (3, 6, 3)
    assert derived_graph(base_sequence(3)) == g


def test_blow_up():
    g = blow_up(cp2(1, 1), "p2")
    assert len(g.vertices) == 4
    assert index_counts(fixed_point_data(g)) == (1, 2, 1)
    v = next(x for x in g.vertices if g.index(x) == 1)
    assert index_counts(fixed_point_data(blow_up(g, v))) == (1, 3, 1)
    with pytest.raises(PatternMismatch):
        blow_up(cp2(1, 1), "p1")


@pytest.mark.parametrize("n0, n1, vertices", [(1, 1, 3), (2, 1, 5), (1, 3, 5), (3, 2, 8), (2, 6, 10)])
def test_min_fixed_points_examples(n0, n1, vertices):
    g = min_fixed_points(n0, n1)
    assert len(g.vertices) == vertices
    d = fixed_point_data(g)
    assert index_counts(d) == (n0, n1, n0)
    assert chern_numbers_4d(d) == (10 * n0 - n1, 2 * n0 + n1)
    assert is_realizable_candidate(g)


def test_min_fixed_points_single_is_triangle():
    # labels 1, 2 on the base, then one merge: the triangle with labels 1, 2, 3
    assert is_isomorphic(min_fixed_points(1, 1), cp2(1, 2))


def test_min_fixed_points_relabeling_pattern():
    assert min_fixed_points(2, 4) == semifree_base_graph(2)
    # labels 1,2,1,2,1,3,1,4; merging p4 joins its 1- and 2-edges into a 3-edge
    g = min_fixed_points(2, 3)
    assert "p4" not in g
    assert [e.label for e in cycle_order(g).edges] == [1, 2, 3, 1, 3, 1, 4]


def test_odd_chain():
    s = odd_chain(3)
    assert s.vectors == ((1, 0), (2, 1), (-3, -1))
    assert s.coefficients == (1, 1, 1)
    assert sorted(s1_weights(s).values()) == [(-3, -2), (-1, 2), (1, 3)]
    s5 = odd_chain(5)
    assert s5.coefficients == (3, 1, 2, 2, 1)
    d = fixed_point_data(derived_graph(s5))
    assert index_counts(d) == (2, 1, 2)
    assert sorted(s1_weights(s5).values())[0] == (-5, -4)
    with pytest.raises(ValueError):
        odd_chain(1)


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_odd_chain_attains_bound(k):
    g = odd_chain_graph(k)
    todd = todd_genus(fixed_point_data(g))
    assert len(g.vertices) == 2 * todd + 1
    assert is_realizable_candidate(g)


def test_catalog_entries_match_recomputation():
    params = {
        "cp2": {"a": 2, "b": 5},
        "hirzebruch": {"n": 2, "c": 7, "d": 3},
        "semifree-base": {"k": 2},
        "square": {"f": 5, "g": 3, "h": 2},
        "min-fixed-points": {"n0": 3, "n1": 1},
        "odd-chain": {"k": 5},
    }
    assert set(params) == set(GENERATORS)
    for name, p in params.items():
        item = entry(name, **p)
        assert item.expected == invariant_report(fixed_point_data(item.graph))
        assert is_realizable_candidate(item.graph)
        result = reduce_to_semifree(item.graph)
        assert sum(todd_genus(fixed_point_data(b)) for b in result.bases) == item.expected.index_counts[0]
    with pytest.raises(KeyError):
        entry("nope")
    with pytest.raises(ValueError):
        entry("cp2", a=1)


def test_square_congruence():
    for f, g, h in [(5, 3, 2), (7, 3, 1), (4, 3, 1)]:
        assert (f - h) % g == 0
        assert realize(square(f, g, h))
    assert not has_equal_modulo_property(square(5, 3, 1))
