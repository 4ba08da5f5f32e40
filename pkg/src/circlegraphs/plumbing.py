"""Cyclic plumbing sequences (v_i, a_i) and their derived multigraphs.

A sequence of vectors v_1..v_k in Z^2 with integers a_1..a_k is accepted
when every successive pair is a positively oriented basis (det = +1), the
recurrence v_{i+1} = -a_i v_i - v_{i-1} holds, and no first component
vanishes.  Vertex p_i sits between v_{i-1} and v_i; its torus weights are
{v_i, -v_{i-1}} and its circle weights the first components of those.  The
i-th edge joins p_i and p_{i+1} and carries the signed label v_{i,1}.

Internally positions are 0-based; vertex ids default to p1..pk.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CircleGraphError,
    NotBasis,
    NotCoprime,
    PatternVectorFail,
    PlumbingError,
    PropertyAViolated,
    RecurrenceFail,
    SiteMismatch,
    PatternMismatch,
    ZeroFirstComponent,
)
from .multigraph import Edge, Multigraph, cycle_order
from .operations import Site, apply_with_inverse

Vector = tuple[int, int]


def det(u: Vector, v: Vector) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _add(u: Vector, v: Vector) -> Vector:
    return (u[0] + v[0], u[1] + v[1])


def _neg(u: Vector) -> Vector:
    return (-u[0], -u[1])


@dataclass(frozen=True)
class PlumbingSequence:
    vectors: tuple[Vector, ...]
    coefficients: tuple[int, ...]
    ids: tuple[str, ...]

    def __init__(self, vectors: Sequence, coefficients: Sequence[int], ids: Sequence[str] | None = None):
        vecs = tuple((int(x), int(y)) for x, y in vectors)
        coeffs = tuple(int(a) for a in coefficients)
        if len(vecs) != len(coeffs):
            raise PlumbingError("vectors and coefficients differ in length")
        if ids is None:
            ids = [f"p{i + 1}" for i in range(len(vecs))]
        ids = tuple(str(v) for v in ids)
        if len(ids) != len(vecs) or len(set(ids)) != len(ids):
            raise PlumbingError("need one distinct id per position")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "ids", ids)

    def __len__(self):
        return len(self.vectors)

    def first_components(self) -> tuple[int, ...]:
        return tuple(v[0] for v in self.vectors)

    def rotated(self, r: int) -> "PlumbingSequence":
        """Re-index so that old position r becomes position 0."""
        k = len(self)
        r %= k
        return PlumbingSequence(
            self.vectors[r:] + self.vectors[:r],
            self.coefficients[r:] + self.coefficients[:r],
            self.ids[r:] + self.ids[:r],
        )

    def reflected(self) -> "PlumbingSequence":
        """The same data read backwards: id_j -> id_{-j}, v_j -> -v_{-j-1}, a_j -> a_{-j-1}.

        This is an involution; it turns det = +1 into det = -1, so it is only
        used as a temporary frame.
        """
        k = len(self)
        return PlumbingSequence(
            [_neg(self.vectors[(-j - 1) % k]) for j in range(k)],
            [self.coefficients[(-j - 1) % k] for j in range(k)],
            [self.ids[(-j) % k] for j in range(k)],
        )

    def to_records(self) -> list[dict]:
        return [{"id": i, "v": list(v), "a": a} for i, v, a in zip(self.ids, self.vectors, self.coefficients)]

    @classmethod
    def from_records(cls, records) -> "PlumbingSequence":
        try:
            vectors = [tuple(r["v"]) for r in records]
            coeffs = [r["a"] for r in records]
        except (KeyError, TypeError):
            raise PlumbingError("plumbing records need 'v' and 'a'") from None
        ids = [r["id"] for r in records] if all("id" in r for r in records) else None
        if any(len(v) != 2 for v in vectors):
            raise PlumbingError("each v must have two components")
        return cls(vectors, coeffs, ids)

    def dumps(self) -> str:
        return json.dumps(self.to_records(), indent=2) + "\n"


def base_sequence(k: int, ids: Sequence[str] | None = None) -> PlumbingSequence:
    """Semi-free base: (1,0),(1,1),(-1,0),(-1,-1) repeated k times, all a_i = 0."""
    if k < 1:
        raise ValueError("base_sequence needs k >= 1")
    block = [(1, 0), (1, 1), (-1, 0), (-1, -1)]
    return PlumbingSequence(block * k, [0] * (4 * k), ids)


def verify_conditions(s: PlumbingSequence) -> None:
    """Raise unless first components are nonzero, the recurrence holds and det(v_i, v_{i+1}) = 1."""
    k = len(s)
    if k < 3:
        raise PlumbingError(f"sequence has length {k}, need at least 3")
    v, a = s.vectors, s.coefficients
    for i in range(k):
        if v[i][0] == 0:
            raise ZeroFirstComponent(f"v_{i + 1} has zero first component", i)
    for i in range(k):
        prev, nxt = v[i - 1], v[(i + 1) % k]
        if (nxt[0] + a[i] * v[i][0] + prev[0], nxt[1] + a[i] * v[i][1] + prev[1]) != (0, 0):
            raise RecurrenceFail(f"v_{(i + 1) % k + 1} != -a_{i + 1} v_{i + 1} - v_{i}", i)
    for i in range(k):
        d = det(v[i], v[(i + 1) % k])
        if d != 1:
            raise NotBasis(f"det(v_{i + 1}, v_{(i + 1) % k + 1}) = {d}, expected +1", i)


def satisfies_conditions(s: PlumbingSequence) -> bool:
    try:
        verify_conditions(s)
    except PlumbingError:
        return False
    return True


def verify_property_a(s: PlumbingSequence) -> None:
    """Coprime adjacent first components, and antipodal vectors across label patterns.

    With signed labels s_j = v_{j,1}, the relabeling patterns around p_i
    (edges i-1, i, i+1 in either reading direction) are exactly the windows
    with s_{i+1} = -s_{i-1}; there v_{i+1} = -v_{i-1} must hold.
    """
    k = len(s)
    v = s.vectors
    for i in range(k):
        if math.gcd(v[i][0], v[i - 1][0]) != 1:
            raise NotCoprime(f"first components of v_{i} and v_{i + 1} are not coprime", i)
    for i in range(k):
        before, mid, after = v[i - 1], v[i], v[(i + 1) % k]
        if after[0] != -before[0]:
            continue
        if after != _neg(before):
            # same-sign pair (before, mid) is the relabeling picture with both
            # flanks leaving (negative) or entering (positive) read forwards;
            # opposite signs mean it is read backwards.
            if before[0] < 0:
                which = "2" if mid[0] < 0 else "3-reversed"
            else:
                which = "3" if mid[0] > 0 else "2-reversed"
            raise PatternVectorFail(f"v_{(i + 1) % k + 1} != -v_{i} around p_{i + 1}", i, which)


def satisfies_property_a(s: PlumbingSequence) -> bool:
    try:
        verify_property_a(s)
    except (PlumbingError, NotCoprime):
        return False
    return True


def derived_graph(s: PlumbingSequence) -> Multigraph:
    k = len(s)
    edges = []
    for i, (x, _) in enumerate(s.vectors):
        a, b = s.ids[i], s.ids[(i + 1) % k]
        edges.append(Edge(a, b, x) if x > 0 else Edge(b, a, -x))
    return Multigraph(s.ids, edges)


def t2_weights(s: PlumbingSequence) -> list[tuple[str, Vector, Vector]]:
    """Per fixed point: (id, v_i, -v_{i-1})."""
    return [(s.ids[i], s.vectors[i], _neg(s.vectors[i - 1])) for i in range(len(s))]


def s1_weights(s: PlumbingSequence) -> dict[str, tuple[int, int]]:
    return {pid: tuple(sorted((u[0], w[0]))) for pid, u, w in t2_weights(s)}


# Replaying operations.  Each update rule is written for a fixed window of
# positions; we rotate (and if needed reflect) the sequence so the site sits
# in that window, update, and undo the reflection.

def _signed(s: PlumbingSequence, j: int) -> int:
    return s.vectors[j % len(s)][0]


def _edge_between(s: PlumbingSequence, j: int) -> Edge:
    """Graph edge of position j (joins ids[j] and ids[j+1])."""
    x = _signed(s, j)
    a, b = s.ids[j % len(s)], s.ids[(j + 1) % len(s)]
    return Edge(a, b, x) if x > 0 else Edge(b, a, -x)


def _update_op1(s: PlumbingSequence, new_ids) -> PlumbingSequence:
    # site vertex at position 1, with s_0 > 0 and s_1 > 0
    v, a, ids = list(s.vectors), list(s.coefficients), list(s.ids)
    p1, p2 = new_ids
    v = [v[0], _add(v[0], v[1])] + v[1:]
    a = [a[0] - 1, -1, a[1] - 1] + a[2:]
    ids = [ids[0], p1, p2] + ids[2:]
    return PlumbingSequence(v, a, ids)


def _update_relabel(s: PlumbingSequence) -> PlumbingSequence:
    # target edge at position 1, flanks at positions 0 and 2 with s_2 = -s_0
    v, a = list(s.vectors), list(s.coefficients)
    v[1] = _add(v[0], v[1])
    a[0], a[1], a[2] = a[0] - 1, 0, a[2] + 1
    return PlumbingSequence(v, a, s.ids)


def _update_op4(s: PlumbingSequence) -> PlumbingSequence:
    # merged edges at positions 1, 2 (vertex ids[2] removed), flanks at 0 and 3
    v, a, ids = list(s.vectors), list(s.coefficients), list(s.ids)
    k = len(s)
    a3 = a[3 % k]
    v = [v[0], _add(v[1], v[2])] + v[3:]
    a = [a[0] + 1, 1, a3 + 1] + a[4:]
    ids = ids[:2] + ids[3:]
    return PlumbingSequence(v, a, ids)


def _try_frame(s: PlumbingSequence, site: Site, new_ids) -> PlumbingSequence | None:
    """Locate the site in this frame's reading direction and apply the update."""
    k = len(s)
    pos = {pid: j for j, pid in enumerate(s.ids)}
    kind = site.kind
    if kind == "Op1":
        j = pos.get(site.vertex)
        if j is None:
            return None
        t = s.rotated(j - 1)
        if _signed(t, 0) > 0 and _signed(t, 1) > 0:
            return _update_op1(t, new_ids)
        return None
    if kind in ("Op2", "Op3"):
        e = site.edge
        # the target joins ids[1] -> ids[2] in the rotated frame
        for src_end in (e.src, e.dst):
            j = pos.get(src_end)
            if j is None:
                return None
            t = s.rotated(j - 1)
            if {t.ids[1], t.ids[2 % k]} != {e.src, e.dst} or _edge_between(t, 1) != e:
                continue
            s0, s1, s2 = _signed(t, 0), _signed(t, 1), _signed(t, 2)
            if s2 != -s0:
                continue
            # Op2 (flanks leave both endpoints) reads -c, -d, c; Op3 reads e, f, -e
            if kind == "Op2" and s0 < 0 and s1 < 0:
                return _update_relabel(t)
            if kind == "Op3" and s0 > 0 and s1 > 0:
                return _update_relabel(t)
        return None
    if kind == "Op4":
        if k < 4:
            return None
        e1, e2 = site.edges
        j = pos.get(e1.src)
        if j is None:
            return None
        t = s.rotated(j - 1)
        if t.ids[2] != e1.dst or t.ids[3 % k] != e2.dst:
            return None
        # reads -g, h, g, -h
        if _edge_between(t, 1) == e1 and _edge_between(t, 2) == e2 and _signed(t, 0) < 0:
            return _update_op4(t)
        return None
    raise SiteMismatch(f"{kind} cannot be replayed on a plumbing sequence")


def replay_on_sequence(s: PlumbingSequence, site: Site) -> PlumbingSequence:
    """Update a plumbing sequence for one forward operation on its derived graph.

    The result is verified again before it is returned.
    """
    try:
        verify_conditions(s)
        verify_property_a(s)
    except (PlumbingError, NotCoprime) as exc:
        raise PropertyAViolated(f"input sequence does not satisfy the hypotheses: {exc}") from None
    new_ids = site.new_ids
    try:
        _, inverse = apply_with_inverse(derived_graph(s), site)
    except PatternMismatch as exc:
        raise SiteMismatch(f"site {site} does not match the derived graph: {exc}") from None
    if site.kind == "Op1" and not new_ids:
        new_ids = (inverse.edge.src, inverse.edge.dst)
    out = _try_frame(s, site, new_ids)
    if out is None:
        out = _try_frame(s.reflected(), site, new_ids)
        if out is not None:
            out = out.reflected()
    if out is None:
        raise SiteMismatch(f"site {site} does not match the sequence")
    # keep the input's starting vertex (or its successor, if Op4 removed it)
    start = next(pid for pid in s.ids if pid in out.ids)
    out = out.rotated(out.ids.index(start))
    verify_conditions(out)
    verify_property_a(out)
    return out


def sequence_for_cycle(g: Multigraph) -> PlumbingSequence:
    """Base sequence laid along a connected semi-free cycle.

    The walk starts at the first index-0 vertex in canonical order; from an
    index-0 vertex either direction reads +1, +1, -1, -1, ...
    """
    order = cycle_order(g)
    k = len(order)
    if k % 4 or any(e.label != 1 for e in g.edges):
        raise CircleGraphError("graph is not a semi-free cycle")
    start = next(j for j, v in enumerate(order.vertices) if g.index(v) == 0)
    ids = [order.vertices[(start + j) % k] for j in range(k)]
    seq = base_sequence(k // 4, ids)
    if derived_graph(seq) != g:
        raise CircleGraphError("graph is not a semi-free cycle")
    return seq


def realize_component(trace) -> PlumbingSequence:
    """Fold the forward trace of one component over its base sequence."""
    seq = sequence_for_cycle(trace.base)
    for site in trace.steps:
        seq = replay_on_sequence(seq, site)
    return seq


def realize(g: Multigraph) -> list[PlumbingSequence]:
    """A verified plumbing sequence for each component of a realizable graph."""
    from .reduction import NotRealizable, realizability_check

    verdict = realizability_check(g)
    if not verdict.accepted:
        raise NotRealizable(verdict.reason)
    out = []
    for trace, comp in zip(verdict.result.traces, verdict.result.components):
        seq = realize_component(trace)
        if derived_graph(seq) != comp:
            raise CircleGraphError("realized sequence does not reproduce the component")
        out.append(seq)
    return out


def graph_of_sequences(seqs) -> Multigraph:
    from .multigraph import union_all

    return union_all(derived_graph(s) for s in seqs)

