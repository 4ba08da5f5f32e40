"""Two-regular labeled directed multigraphs.

A vertex stands for a fixed point; a directed edge ``src -> dst`` with label
``w`` contributes the weight ``+w`` at ``src`` and ``-w`` at ``dst``.  The
index of a vertex is its number of incoming edges.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import (
    BadLabel,
    DuplicateVertex,
    GraphError,
    NotConnected,
    NotTwoRegular,
    SelfLoop,
    UnknownVertex,
)
from .fpdata import FixedPointData, index_counts


def natural_key(vertex_id: str):
    """Sort key that orders p2 before p10."""
    return tuple((0, int(part)) if part.isdigit() else (1, part) for part in re.split(r"(\d+)", vertex_id) if part)


class Edge(NamedTuple):
    src: str
    dst: str
    label: int

    def __str__(self):
        return f"({self.src}->{self.dst}, {self.label})"

    def other(self, v: str) -> str:
        return self.dst if v == self.src else self.src

    def touches(self, v: str) -> bool:
        return v == self.src or v == self.dst


def edge_key(e: Edge):
    return (natural_key(e.src), natural_key(e.dst), e.label)


@dataclass(frozen=True)
class Multigraph:
    """Vertex ids plus a multiset of labeled directed edges.

    Both are stored sorted, so equal graphs compare equal.  Construction
    only checks that edge endpoints exist; use ``validate`` for the rest.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __init__(self, vertices: Iterable = (), edges: Iterable = ()):
        verts = [str(v) for v in vertices]
        if len(set(verts)) != len(verts):
            dup = sorted(v for v, c in Counter(verts).items() if c > 1)
            raise DuplicateVertex(f"duplicate vertex ids: {dup}")
        known = set(verts)
        es = []
        for e in edges:
            src, dst, label = e
            e = Edge(str(src), str(dst), label)
            for v in (e.src, e.dst):
                if v not in known:
                    raise UnknownVertex(f"edge {e} mentions unknown vertex {v!r}")
            es.append(e)
        object.__setattr__(self, "vertices", tuple(sorted(verts, key=natural_key)))
        object.__setattr__(self, "edges", tuple(sorted(es, key=edge_key)))

    @cached_property
    def _incidence(self) -> dict[str, list[Edge]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.src].append(e)
            inc[e.dst].append(e)
        return inc

    def __contains__(self, vertex) -> bool:
        return vertex in self._incidence

    def incident(self, v: str) -> list[Edge]:
        if v not in self._incidence:
            raise UnknownVertex(f"unknown vertex {v!r}")
        return list(self._incidence[v])

    def index(self, v: str) -> int:
        return sum(1 for e in self.incident(v) if e.dst == v)

    def weights(self, v: str) -> tuple[int, ...]:
        ws = []
        for e in self.incident(v):
            if e.src == v:
                ws.append(e.label)
            if e.dst == v:
                ws.append(-e.label)
        return tuple(sorted(ws))

    def has_edge(self, e: Edge) -> bool:
        return e in self.edges

    def other_edge(self, v: str, edge: Edge) -> Edge:
        """The edge at ``v`` other than (one copy of) ``edge``; needs degree 2."""
        inc = self.incident(v)
        inc.remove(edge)
        if len(inc) != 1:
            raise NotTwoRegular(v, len(inc) + 1)
        return inc[0]

    def rewrite(self, remove_edges=(), add_edges=(), remove_vertices=(), add_vertices=()) -> "Multigraph":
        """New graph with the given edges/vertices removed and added (edges as a multiset)."""
        edges = list(self.edges)
        for e in remove_edges:
            edges.remove(e)
        dropped = set(remove_vertices)
        verts = [v for v in self.vertices if v not in dropped]
        return Multigraph(verts + list(add_vertices), edges + [Edge(*e) for e in add_edges])

    def relabel(self, edge: Edge, label: int) -> "Multigraph":
        return self.rewrite(remove_edges=[edge], add_edges=[Edge(edge.src, edge.dst, label)])

    def label_sum(self) -> int:
        return sum(e.label for e in self.edges)

    def max_label(self) -> int:
        return max((e.label for e in self.edges), default=0)


def validate(g: Multigraph) -> None:
    """Raise unless g is 2-regular, loop-free and positively labeled."""
    for e in g.edges:
        if not isinstance(e.label, int) or isinstance(e.label, bool) or e.label < 1:
            raise BadLabel(e)
    for e in g.edges:
        if e.src == e.dst:
            raise SelfLoop(e)
    for v in g.vertices:
        degree = len(g.incident(v))
        if degree != 2:
            raise NotTwoRegular(v, degree)


def is_valid(g: Multigraph) -> bool:
    try:
        validate(g)
    except GraphError:
        return False
    return True


def vertex_index(g: Multigraph, v: str) -> int:
    return g.index(v)


def fixed_point_data(g: Multigraph) -> FixedPointData:
    return FixedPointData((g.weights(v) for v in g.vertices), n=2)


def is_semi_free(g: Multigraph) -> bool:
    return all(e.label == 1 and g.index(e.src) + 1 == g.index(e.dst) for e in g.edges)


def is_effective(g: Multigraph) -> bool:
    return all(math.gcd(*(abs(w) for w in g.weights(v))) == 1 for v in g.vertices)


def is_symmetric(g: Multigraph) -> bool:
    counts = index_counts(fixed_point_data(g))
    return counts[0] == counts[2]


def has_minimal_property(g: Multigraph) -> bool:
    return all(g.index(e.src) + 1 == g.index(e.dst) for e in g.edges if e.label == 1)


def has_equal_modulo_property(g: Multigraph) -> bool:
    for e in g.edges:
        w = e.label
        if sorted(x % w for x in g.weights(e.src)) != sorted(x % w for x in g.weights(e.dst)):
            return False
    return True


# Order in which candidate conditions are checked; the first failure is the
# reported reason.
CANDIDATE_CHECKS = (
    ("effectiveness", is_effective),
    ("symmetry", is_symmetric),
    ("minimal-property", has_minimal_property),
    ("equal-modulo", has_equal_modulo_property),
)


def candidate_failure(g: Multigraph) -> str | None:
    """Reason tag of the first failing realizability condition, or None."""
    try:
        validate(g)
    except GraphError as exc:
        return exc.reason
    for name, check in CANDIDATE_CHECKS:
        if not check(g):
            return name
    return None


def is_realizable_candidate(g: Multigraph) -> bool:
    return candidate_failure(g) is None


def predicate_table(g: Multigraph) -> dict[str, bool]:
    """All conditions evaluated independently (later ones only if g is valid)."""
    valid = is_valid(g)
    table = {"two-regular": valid}
    for name, check in CANDIDATE_CHECKS:
        table[name] = valid and check(g)
    return table


def connected_components(g: Multigraph) -> list[Multigraph]:
    """Components ordered by their smallest vertex id."""
    seen: set[str] = set()
    comps = []
    for start in g.vertices:
        if start in seen:
            continue
        stack = [start]
        members = {start}
        while stack:
            v = stack.pop()
            for e in g.incident(v):
                u = e.other(v)
                if u not in members:
                    members.add(u)
                    stack.append(u)
        seen |= members
        comps.append(Multigraph(members, [e for e in g.edges if e.src in members]))
    return comps


@dataclass(frozen=True)
class CycleOrder:
    """Vertices of a cycle in traversal order; edges[i] joins vertices[i] and vertices[i+1]."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __len__(self):
        return len(self.vertices)

    def signed_labels(self) -> tuple[int, ...]:
        """+label when edges[i] points along the traversal, -label otherwise."""
        return tuple(e.label if e.src == v else -e.label for v, e in zip(self.vertices, self.edges))


def cycle_order(g: Multigraph) -> CycleOrder:
    """Canonical traversal of a connected 2-regular loop-free graph.

    Starts at the smallest vertex id (natural order) and heads first toward
    the smaller of its two neighbours.
    """
    validate(g)
    if not g.vertices:
        raise NotConnected("empty graph has no cycle")
    start = g.vertices[0]
    first, second = sorted(g.incident(start), key=lambda e: (natural_key(e.other(start)), e.label, e.src != start))
    verts = [start]
    edges = [first]
    current = first.other(start)
    came_by = first
    while current != start:
        verts.append(current)
        nxt = g.other_edge(current, came_by)
        edges.append(nxt)
        came_by = nxt
        current = nxt.other(current)
    if len(verts) != len(g.vertices):
        raise NotConnected(f"graph has more than one component ({len(verts)} of {len(g.vertices)} vertices reached)")
    return CycleOrder(tuple(verts), tuple(edges))


def minimal_rotation(seq: tuple[int, ...]) -> tuple[int, ...]:
    return min(seq[i:] + seq[:i] for i in range(len(seq))) if seq else seq


def canonical_signed_cycle(signed: tuple[int, ...]) -> tuple[int, ...]:
    """Representative of a signed label cycle up to rotation and reflection.

    Walking the cycle backwards reverses the order and flips every sign.
    """
    backwards = tuple(-s for s in reversed(signed))
    return min(minimal_rotation(tuple(signed)), minimal_rotation(backwards))


def canonical_form(g: Multigraph) -> tuple[tuple[int, ...], ...]:
    """Isomorphism invariant that determines a valid graph up to vertex renaming."""
    validate(g)
    return tuple(sorted(canonical_signed_cycle(cycle_order(c).signed_labels()) for c in connected_components(g)))


def is_isomorphic(g1: Multigraph, g2: Multigraph) -> bool:
    return canonical_form(g1) == canonical_form(g2)


def graph_from_signed_labels(signed, prefix: str = "p") -> Multigraph:
    """Cycle p1..pk whose i-th edge joins p_i, p_{i+1} with the given signed label."""
    k = len(signed)
    ids = [f"{prefix}{i + 1}" for i in range(k)]
    edges = []
    for i, s in enumerate(signed):
        a, b = ids[i], ids[(i + 1) % k]
        edges.append(Edge(a, b, s) if s > 0 else Edge(b, a, -s))
    return Multigraph(ids, edges)


def fresh_id(taken, stem: str) -> str:
    """``stem`` itself if unused, otherwise ``stem.1``, ``stem.2``, ..."""
    if stem not in taken:
        return stem
    i = 1
    while f"{stem}.{i}" in taken:
        i += 1
    return f"{stem}.{i}"


def disjoint_union(g1: Multigraph, g2: Multigraph) -> Multigraph:
    """Union of two graphs; ids of g2 that clash with g1 are renamed."""
    taken = set(g1.vertices) | set(g2.vertices)
    rename = {}
    for v in g2.vertices:
        if v in g1:
            new = fresh_id(taken, f"{v}~")
            taken.add(new)
            rename[v] = new
        else:
            rename[v] = v
    edges = list(g1.edges) + [Edge(rename[e.src], rename[e.dst], e.label) for e in g2.edges]
    return Multigraph(list(g1.vertices) + [rename[v] for v in g2.vertices], edges)


def union_all(graphs: Iterable[Multigraph]) -> Multigraph:
    out = Multigraph()
    for g in graphs:
        out = disjoint_union(out, g)
    return out


# serialization

def graph_to_dict(g: Multigraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"from": e.src, "to": e.dst, "label": e.label} for e in g.edges],
    }


def graph_from_dict(data) -> Multigraph:
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise GraphError("graph document needs 'vertices' and 'edges'")
    edges = []
    for rec in data["edges"]:
        try:
            label = rec["label"]
            edges.append(Edge(str(rec["from"]), str(rec["to"]), label))
        except (KeyError, TypeError):
            raise GraphError(f"malformed edge record {rec!r}") from None
        if not isinstance(label, int) or isinstance(label, bool):
            raise BadLabel(edges[-1])
    return Multigraph([str(v) for v in data["vertices"]], edges)


def dumps_graph(g: Multigraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def loads_graph(text: str) -> Multigraph:
    return graph_from_dict(json.loads(text))


def to_dot(g: Multigraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{v}" [label="{v}\\nindex {g.index(v)}"];')
    for e in g.edges:
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
