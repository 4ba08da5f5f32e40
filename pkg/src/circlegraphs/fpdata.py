"""Fixed point data of circle actions with isolated fixed points.

A fixed point is described by its multiset of nonzero integer weights; the
data of an action is the multiset of those, all of the same size ``n``.
Everything here is exact: integers and ``fractions.Fraction``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ChiYMismatch,
    EmptyData,
    InvalidFixedPointData,
    NonInteger,
    NotConstant,
    NotSemiFree,
    PoleCollision,
    WrongDimension,
)

Weights = tuple[int, ...]

# Sample values of t for the chi_y sum.  Distinct, all > 1, so t**w != 1 for
# every nonzero integer w.
DEFAULT_SAMPLES = (Fraction(2), Fraction(3), Fraction(5, 2))


@dataclass(frozen=True)
class FixedPointData:
    """Multiset of weight multisets, stored canonically sorted."""

    points: tuple[Weights, ...]
    n: int

    def __init__(self, points: Iterable[Iterable[int]] = (), n: int | None = None):
        pts = [tuple(sorted(int(w) for w in p)) for p in points]
        sizes = {len(p) for p in pts}
        if len(sizes) > 1:
            raise InvalidFixedPointData(f"fixed points have different numbers of weights: {sorted(sizes)}")
        if pts:
            size = sizes.pop()
            if n is not None and n != size:
                raise InvalidFixedPointData(f"declared n={n} but points have {size} weights")
            n = size
        if n is None or n < 1:
            raise InvalidFixedPointData("n must be a positive integer (give it explicitly for empty data)")
        for p in pts:
            if 0 in p:
                raise InvalidFixedPointData(f"zero weight in {p}")
        object.__setattr__(self, "points", tuple(sorted(pts)))
        object.__setattr__(self, "n", n)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def union(self, other: "FixedPointData") -> "FixedPointData":
        if self.n != other.n:
            raise InvalidFixedPointData("cannot join data of different dimensions")
        return FixedPointData(self.points + other.points, self.n)


def point_index(weights: Sequence[int]) -> int:
    return sum(1 for w in weights if w < 0)


def index_counts(d: FixedPointData) -> tuple[int, ...]:
    counts = [0] * (d.n + 1)
    for p in d.points:
        counts[point_index(p)] += 1
    return tuple(counts)


def todd_genus(d: FixedPointData) -> int:
    return index_counts(d)[0]


def elementary_symmetric(values: Sequence, i: int):
    if i == 0:
        return 1
    return sum(math.prod(c) for c in itertools.combinations(values, i))


def chi_y_at(d: FixedPointData, t: Fraction) -> tuple[Fraction, ...]:
    """The fixed-point sums chi^0..chi^n evaluated at one value of t."""
    t = Fraction(t)
    totals = [Fraction(0)] * (d.n + 1)
    for p in d.points:
        powers = [t ** w for w in p]
        denominator = math.prod(1 - x for x in powers)
        if denominator == 0:
            raise PoleCollision(f"t={t} is a pole for weights {p}")
        for i in range(d.n + 1):
            totals[i] += Fraction(elementary_symmetric(powers, i)) / denominator
    return tuple(totals)


def _fmt(values) -> str:
    return ", ".join(str(v) for v in values)


def chi_y(d: FixedPointData, samples: Sequence[Fraction] = DEFAULT_SAMPLES) -> tuple[int, ...]:
    """Hirzebruch chi_y coefficients from the fixed point formula.

    The sum is a rational function of t; for the data of an actual action it
    is constant.  We evaluate it at several sample points, require agreement
    and integrality, and finally check chi^i = (-1)^i N_i.
    """
    if not d.points:
        raise EmptyData("chi_y needs at least one fixed point")
    values = []
    for t in samples:
        try:
            values.append(chi_y_at(d, t))
        except PoleCollision:
            continue
    if len(values) < 2:
        raise PoleCollision("not enough usable sample points")
    first = values[0]
    for other in values[1:]:
        if other != first:
            raise NotConstant(f"fixed point sum depends on t: ({_fmt(first)}) vs ({_fmt(other)})")
    if any(v.denominator != 1 for v in first):
        raise NonInteger(f"fixed point sum is not integral: ({_fmt(first)})")
    result = tuple(int(v) for v in first)
    expected = tuple((-1) ** i * c for i, c in enumerate(index_counts(d)))
    if result != expected:
        raise ChiYMismatch(f"chi_y = {result} but (-1)^i N_i = {expected}")
    return result


def chern_numbers_4d(d: FixedPointData) -> tuple[int, int]:
    """(c1^2, c2) of a 4-manifold from its index counts."""
    if d.n != 2:
        raise WrongDimension(f"Chern number formula needs n=2, got n={d.n}")
    n0, n1, _ = index_counts(d)
    return 10 * n0 - n1, 2 * n0 + n1


def weight_pairing_check(d: FixedPointData) -> bool:
    counts = Counter(w for p in d.points for w in p)
    return all(counts[w] == counts[-w] for w in counts)


def smallest_weight_check(d: FixedPointData) -> bool:
    """Signed multiplicities of the smallest positive weight match across adjacent indices."""
    positive = [w for p in d.points for w in p if w > 0]
    if not positive:
        return True
    a = min(positive)
    plus = [0] * (d.n + 1)
    minus = [0] * (d.n + 1)
    for p in d.points:
        k = point_index(p)
        plus[k] += p.count(a)
        minus[k] += p.count(-a)
    return all(plus[j] == minus[j + 1] for j in range(d.n))


def adjacent_index_check(d: FixedPointData) -> bool:
    if not d.points:
        raise EmptyData("adjacent_index_check needs at least one fixed point")
    counts = index_counts(d)
    return any(counts[i] > 0 and counts[i + 1] > 0 for i in range(d.n))


def product(d1: FixedPointData, d2: FixedPointData) -> FixedPointData:
    """Fixed point data of the diagonal action on a product."""
    return FixedPointData((p + q for p in d1.points for q in d2.points), d1.n + d2.n)


def semifree_count_check(d: FixedPointData) -> bool:
    if any(abs(w) != 1 for p in d.points for w in p):
        raise NotSemiFree("semifree_count_check needs all weights to be +-1")
    counts = index_counts(d)
    return all(counts[i] == counts[0] * math.comb(d.n, i) for i in range(d.n + 1))


@dataclass(frozen=True)
class InvariantReport:
    index_counts: tuple[int, ...]
    todd: int
    chi: tuple[int, ...] | None
    euler: int
    signature: int | None
    c1_squared: int | None = None
    c2: int | None = None

    def to_dict(self) -> dict:
        out = {
            "index_counts": list(self.index_counts),
            "todd": self.todd,
            "chi": None if self.chi is None else list(self.chi),
            "euler": self.euler,
            "signature": self.signature,
        }
        if self.c1_squared is not None:
            out["c1_squared"] = self.c1_squared
            out["c2"] = self.c2
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantReport":
        chi = data.get("chi")
        return cls(
            index_counts=tuple(data["index_counts"]),
            todd=data["todd"],
            chi=None if chi is None else tuple(chi),
            euler=data["euler"],
            signature=data.get("signature"),
            c1_squared=data.get("c1_squared"),
            c2=data.get("c2"),
        )


def invariant_report(d: FixedPointData) -> InvariantReport:
    counts = index_counts(d)
    chi = chi_y(d) if d.points else None
    c1sq = c2 = None
    if d.n == 2:
        c1sq, c2 = chern_numbers_4d(d)
    return InvariantReport(
        index_counts=counts,
        todd=counts[0],
        chi=chi,
        euler=sum(counts),
        signature=None if chi is None else sum(chi),
        c1_squared=c1sq,
        c2=c2,
    )


def parse_fixed_point_data(text: str) -> FixedPointData:
    """Parse the line format: one comma-separated weight list per point."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            points.append([int(tok) for tok in line.split(",")])
        except ValueError:
            raise InvalidFixedPointData(f"line {lineno}: expected comma-separated integers, got {raw!r}") from None
    if not points:
        raise InvalidFixedPointData("no fixed points found (n cannot be inferred)")
    return FixedPointData(points)


def format_fixed_point_data(d: FixedPointData) -> str:
    return "".join(",".join(str(w) for w in p) + "\n" for p in d.points)
