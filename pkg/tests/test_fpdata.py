from __future__ import annotations

from fractions import Fraction

import pytest

from circlegraphs.errors import (
    EmptyData,
    InvalidFixedPointData,
    NotConstant,
    NotSemiFree,
    WrongDimension,
)
from circlegraphs.fpdata import (
    FixedPointData,
    adjacent_index_check,
    chern_numbers_4d,
    chi_y,
    chi_y_at,
    format_fixed_point_data,
    index_counts,
    invariant_report,
    parse_fixed_point_data,
    product,
    semifree_count_check,
    smallest_weight_check,
    todd_genus,
    weight_pairing_check,
)

CP2 = FixedPointData([[1, 2], [-1, 1], [-1, -2]])
S2 = FixedPointData([[1], [-1]])
BASE1 = FixedPointData([[1, 1], [-1, 1], [-1, 1], [-1, -1]])


def hirzebruch_data(n, c, d):
    return FixedPointData([[-c, d], [n * d - c, -d], [c, d], [c - n * d, -d]])


def with_counts(n0, n1, n2):
    return FixedPointData([[1, 1]] * n0 + [[-1, 1]] * n1 + [[-1, -1]] * n2)


def test_canonical_form_sorts_weights_and_points():
    d = FixedPointData([[2, 1], [-2, -1], [1, -1]])
    assert d.points == ((-2, -1), (-1, 1), (1, 2))
    assert d == FixedPointData([[-1, 1], [1, 2], [-1, -2]])


def test_rejects_zero_weights_and_mixed_sizes():
    with pytest.raises(InvalidFixedPointData):
        FixedPointData([[1, 0]])
    with pytest.raises(InvalidFixedPointData):
        FixedPointData([[1, 2], [1]])
    with pytest.raises(InvalidFixedPointData):
        FixedPointData([])


def test_index_counts_examples():
    assert index_counts(CP2) == (1, 1, 1)
    assert index_counts(FixedPointData([], n=2)) == (0, 0, 0)
    assert index_counts(hirzebruch_data(1, 3, 2)) == (1, 2, 1)


def test_todd_genus_examples():
    assert todd_genus(CP2) == 1
    assert todd_genus(FixedPointData([], n=2)) == 0
    three_bases = FixedPointData(BASE1.points * 3)
    assert todd_genus(three_bases) == 3


# chi_y values below were obtained by simplifying the fixed point sum
# symbolically (sympy) and then frozen.
@pytest.mark.parametrize(
    "data, expected",
    [
        (S2, (1, -1)),
        (CP2, (1, -1, 1)),
        (hirzebruch_data(1, 3, 2), (1, -2, 1)),
        (BASE1, (1, -2, 1)),
        (FixedPointData([[1, 5], [2, -1], [-3, -2], [4, 3], [-5, -4]]), (2, -1, 2)),
    ],
)
def test_chi_y_frozen(data, expected):
    assert chi_y(data) == expected


def test_chi_y_exact_sample_for_circle():
    # 1/(1-t) + 1/(1-1/t) = 1 at every t
    assert chi_y_at(S2, Fraction(7, 3)) == (1, -1)


@pytest.mark.parametrize("drop", [(1, 2), (-2, -1)])
def test_chi_y_not_constant(drop):
    points = [(1, 2), (-1, 1), (-1, 1), (-2, -1)]
    points.remove(drop)
    with pytest.raises(NotConstant):
        chi_y(FixedPointData(points))


def test_chi_y_symbolic_oracle_agrees():
    sp = pytest.importorskip("sympy")
    import itertools
    import math

    t = sp.symbols("t")
    data = hirzebruch_data(2, 7, 3)
    sums = []
    for i in range(3):
        total = 0
        for p in data.points:
            xs = [t**w for w in p]
            s = sum(math.prod(c) for c in itertools.combinations(xs, i)) if i else 1
            total += s / sp.prod([1 - x for x in xs])
        sums.append(sp.simplify(sp.together(total)))
    assert tuple(int(v) for v in sums) == chi_y(data)


def test_chi_y_requires_points():
    with pytest.raises(EmptyData):
        chi_y(FixedPointData([], n=2))


def test_chi_y_unpaired_indices_not_constant():
    # chi^0 = (1 + t^2) / (1 - t)^2 here
    with pytest.raises(NotConstant):
        chi_y(FixedPointData([[1, 1], [-1, -1]]))


def test_chern_numbers():
    assert chern_numbers_4d(with_counts(1, 1, 1)) == (9, 3)
    assert chern_numbers_4d(with_counts(1, 2, 1)) == (8, 4)
    assert chern_numbers_4d(with_counts(3, 1, 3)) == (29, 7)
    with pytest.raises(WrongDimension):
        chern_numbers_4d(S2)


def test_weight_pairing():
    assert weight_pairing_check(CP2)
    assert weight_pairing_check(FixedPointData([[1, 2], [-1, -2]]))
    assert not weight_pairing_check(FixedPointData([[1, 2], [-1, -3]]))


def test_smallest_weight():
    assert smallest_weight_check(CP2)
    assert not smallest_weight_check(FixedPointData([[1, 1], [-1, -1]]))
    assert smallest_weight_check(BASE1)


def test_adjacent_index():
    assert adjacent_index_check(with_counts(1, 1, 1))
    assert not adjacent_index_check(with_counts(1, 0, 1))
    assert adjacent_index_check(with_counts(0, 2, 1))
    with pytest.raises(EmptyData):
        adjacent_index_check(FixedPointData([], n=2))


def test_product_examples():
    sq = product(S2, S2)
    assert sq == FixedPointData([[1, 1], [1, -1], [-1, 1], [-1, -1]])
    assert index_counts(sq) == (1, 2, 1)
    base2 = FixedPointData(BASE1.points * 2)
    big = product(base2, S2)
    assert len(big) == 16
    assert index_counts(big) == (2, 6, 6, 2)
    assert len(product(CP2, FixedPointData([], n=1))) == 0


def test_semifree_count():
    assert semifree_count_check(BASE1)
    assert not semifree_count_check(FixedPointData([[1, 1], [-1, -1]]))
    assert semifree_count_check(product(FixedPointData(BASE1.points * 2), S2))
    with pytest.raises(NotSemiFree):
        semifree_count_check(CP2)


def test_invariant_report_cp2():
    r = invariant_report(CP2)
    assert r.index_counts == (1, 1, 1)
    assert (r.todd, r.chi, r.euler, r.signature) == (1, (1, -1, 1), 3, 1)
    assert (r.c1_squared, r.c2) == (9, 3)
    assert r.c1_squared + r.c2 == 12 * r.todd


def test_invariant_report_circle_has_no_chern_numbers():
    r = invariant_report(S2)
    assert r.c1_squared is None and r.c2 is None
    assert r.to_dict()["chi"] == [1, -1]


def test_text_format_round_trip():
    text = "# CP2\n1,2\n\n-1, 1\n-1,-2  # last\n"
    d = parse_fixed_point_data(text)
    assert d == CP2
    assert parse_fixed_point_data(format_fixed_point_data(d)) == d
    with pytest.raises(InvalidFixedPointData):
        parse_fixed_point_data("1,x\n")
    with pytest.raises(InvalidFixedPointData):
        parse_fixed_point_data("1,2\n3\n")
