"""Named example graphs and data: projective plane, Hirzebruch surfaces,
semi-free bases, blow-ups, minimal-fixed-point constructions, odd chains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateWeight, NotCoprime, PlumbingError
from .fpdata import FixedPointData, InvariantReport, invariant_report
from .multigraph import Multigraph, fixed_point_data
from .operations import apply_op1, apply_op2, apply_op3, apply_op4, find_sites
from .plumbing import PlumbingSequence, derived_graph, verify_conditions


def cp2(a: int, b: int) -> Multigraph:
    """Triangle for the linear action [z0 : t^a z1 : t^(a+b) z2]."""
    if a < 1 or b < 1:
        raise ValueError("cp2 needs positive a, b")
    if math.gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) != 1")
    return Multigraph(["p1", "p2", "p3"], [("p1", "p2", a), ("p2", "p3", b), ("p1", "p3", a + b)])


def hirzebruch(n: int, c: int, d: int) -> Multigraph:
    """Four-cycle with weights {-c,d}, {nd-c,-d}, {c,d}, {c-nd,-d}.

    With e = |c - nd|: if c > nd or d = 1 the square is
    p1 -d-> p2 -e-> p4 <-d- p3 <-c- p1; otherwise
    p1 -c-> p3 -d-> p4 -e-> p2 <-d- p1.
    """
    if c < 1 or d < 1:
        raise ValueError("hirzebruch needs positive c, d")
    if math.gcd(c, d) != 1:
        raise NotCoprime(f"gcd({c}, {d}) != 1")
    if c == n * d:
        raise DegenerateWeight(f"c - nd = 0 for n={n}, c={c}, d={d}")
    e = abs(c - n * d)
    verts = ["p1", "p2", "p3", "p4"]
    if c - n * d > 0 or d == 1:
        return Multigraph(verts, [("p1", "p2", d), ("p1", "p3", c), ("p2", "p4", e), ("p3", "p4", d)])
    return Multigraph(verts, [("p1", "p3", c), ("p1", "p2", d), ("p3", "p4", d), ("p4", "p2", e)])


def hirzebruch_weights(n: int, c: int, d: int) -> FixedPointData:
    return FixedPointData([[-c, d], [n * d - c, -d], [c, d], [c - n * d, -d]])


def semifree_base_graph(k: int, prefix: str = "p") -> Multigraph:
    """4k-cycle p1 -> p2 -> p3 <- p4 <- p5 -> ... with all labels 1."""
    if k < 1:
        raise ValueError("semifree_base_graph needs k >= 1")
    m = 4 * k
    ids = [f"{prefix}{i + 1}" for i in range(m)]
    edges = []
    for j in range(k):
        a, b, c, d = (ids[4 * j + i] for i in range(4))
        e = ids[(4 * j + 4) % m]
        edges += [(a, b, 1), (b, c, 1), (d, c, 1), (e, d, 1)]
    return Multigraph(ids, edges)


def square(f: int, g: int, h: int) -> Multigraph:
    """Four-cycle p1 -f-> p2 -g-> p4 <-h- p3 <-g- p1 (realizable when f = h mod g)."""
    return Multigraph(["p1", "p2", "p3", "p4"], [("p1", "p2", f), ("p1", "p3", g), ("p2", "p4", g), ("p3", "p4", h)])


def blow_up(g: Multigraph, v: str, new_ids=None) -> Multigraph:
    """Replace an index-1 vertex with weights {-a, b} by an (a+b)-edge."""
    return apply_op1(g, v, new_ids)


def min_fixed_points(n0: int, n1: int) -> Multigraph:
    """A graph with index counts (n0, n1, n0) and 2*n0 + n1 vertices.

    For n1 >= 2*n0 blow up a semi-free base.  Otherwise relabel the base so
    that the labels along the cycle read 1,2,1,2,1,3,1,4,...,1,2*n0 and then
    merge 2*n0 - n1 index-1 vertices.
    """
    if n0 < 1 or n1 < 1:
        raise ValueError("min_fixed_points needs positive counts")
    g = semifree_base_graph(n0)
    if n1 >= 2 * n0:
        for _ in range(n1 - 2 * n0):
            v = next(s.vertex for s in find_sites(g, "Op1"))
            g = apply_op1(g, v)
        return g

    def p(i):
        return f"p{(i - 1) % (4 * n0) + 1}"

    def edge_between(a, b):
        return next(e for e in g.edges if {e.src, e.dst} == {a, b})

    # edge p_{4j+2}p_{4j+3} gets label 2j+1 (2 for j = 0), p_{4j+4}p_{4j+5} gets 2j+2
    for j in range(n0):
        for _ in range(max(2 * j, 1)):
            g = apply_op3(g, edge_between(p(4 * j + 2), p(4 * j + 3)))
        for _ in range(2 * j + 1):
            g = apply_op2(g, edge_between(p(4 * j + 5), p(4 * j + 4)))
    # labels now 1, 2, 1, 2, 1, 3, 1, 4, ...; merge at p4, p6, p8, ...
    for m in range(1, 2 * n0 - n1 + 1):
        b = p(2 * m + 2)
        ein = next(e for e in g.edges if e.dst == b)
        eout = next(e for e in g.edges if e.src == b)
        g = apply_op4(g, ein, eout)
    return g


def odd_chain(k: int) -> PlumbingSequence:
    """Sequence (1,0), (2,1), (-3,-1), (4,1), ..., (-k,-1) for odd k >= 3.

    The a_i are solved from the recurrence v_{i+1} = -a_i v_i - v_{i-1}.
    """
    if k < 3 or k % 2 == 0:
        raise ValueError("odd_chain needs an odd k >= 3")
    vectors = [(1, 0)]
    for j in range(2, k + 1):
        vectors.append((j, 1) if j % 2 == 0 else (-j, -1))
    coeffs = [solve_coefficient(vectors[i - 1], vectors[i], vectors[(i + 1) % k]) for i in range(k)]
    seq = PlumbingSequence(vectors, coeffs)
    verify_conditions(seq)
    return seq


def solve_coefficient(prev, cur, nxt) -> int:
    """The integer a with nxt = -a * cur - prev."""
    target = (-(nxt[0] + prev[0]), -(nxt[1] + prev[1]))
    # a * cur = target
    candidates = set()
    for t, c in zip(target, cur):
        if c != 0:
            if t % c:
                raise PlumbingError(f"no integer coefficient: {target} is not a multiple of {cur}")
            candidates.add(t // c)
        elif t != 0:
            raise PlumbingError(f"no coefficient solves {target} = a * {cur}")
    if len(candidates) != 1:
        raise PlumbingError(f"no unique coefficient for {target} = a * {cur}")
    return candidates.pop()


def odd_chain_graph(k: int) -> Multigraph:
    return derived_graph(odd_chain(k))


def rotation_sphere() -> FixedPointData:
    """Rotation of S^2: two fixed points with weights 1 and -1."""
    return FixedPointData([[1], [-1]])


def semifree_base_data(k: int) -> FixedPointData:
    return fixed_point_data(semifree_base_graph(k))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: dict
    graph: Multigraph
    expected: InvariantReport


# name -> (constructor, required parameter names)
GENERATORS = {
    "cp2": (cp2, ("a", "b")),
    "hirzebruch": (hirzebruch, ("n", "c", "d")),
    "semifree-base": (semifree_base_graph, ("k",)),
    "square": (square, ("f", "g", "h")),
    "min-fixed-points": (min_fixed_points, ("n0", "n1")),
    "odd-chain": (odd_chain_graph, ("k",)),
}


def entry(name: str, **params) -> CatalogEntry:
    if name not in GENERATORS:
        raise KeyError(f"unknown catalog entry {name!r}; choose from {sorted(GENERATORS)}")
    fn, needed = GENERATORS[name]
    missing = [p for p in needed if p not in params]
    if missing:
        raise ValueError(f"{name} needs parameters {missing}")
    args = [params[p] for p in needed]
    g = fn(*args)
    return CatalogEntry(name, {p: params[p] for p in needed}, g, invariant_report(fixed_point_data(g)))


__all__ = [
    "cp2",
    "hirzebruch",
    "semifree_base_graph",
    "square",
    "blow_up",
    "min_fixed_points",
    "odd_chain",
    "rotation_sphere",
    "entry",
]
