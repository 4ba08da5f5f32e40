"""The four local rewrites of labeled cycles, their reverses, and traces.

Each rewrite is anchored at concrete vertex ids and edges rather than at
positions, so a recorded trace replays exactly even though Op1 and RevOp4
create vertices.  The local pictures, with ``x -c-> y`` an edge of label c:

* Op1:   index-1 vertex ``u -a-> v -b-> w`` becomes ``u -a-> v' -(a+b)-> v'' -b-> w``.
* Op2:   target ``P -d-> Q`` where P and Q both have their other edge
         outgoing with a common label c; the target label becomes d+c.
* Op3:   target ``P -f-> Q`` where P and Q both have their other edge
         incoming with a common label e; the target label becomes f+e.
* Op4:   ``A -h-> B -g-> C`` where A's other edge leaves A with label g and
         C's other edge enters C with label h; B is removed and ``A -(g+h)-> C`` added.

The reverse operations undo these; see ``apply_reverse``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace

from .errors import GraphError, NonPositiveLabel, PatternMismatch
from .multigraph import (
    Edge,
    Multigraph,
    connected_components,
    cycle_order,
    fresh_id,
    graph_from_dict,
    graph_to_dict,
    validate,
)

FORWARD_KINDS = ("Op1", "Op2", "Op3", "Op4")
REVERSE_KINDS = ("RevOp1", "RevOp2", "RevOp3", "RevOp4")
KINDS = FORWARD_KINDS + REVERSE_KINDS


@dataclass(frozen=True)
class Site:
    """Where an operation acts.

    ``vertex`` anchors Op1; ``edges`` holds the target edge for Op2/Op3 and
    all reverse kinds, and the two merged edges for Op4.  ``new_ids`` names
    the vertices the operation creates (Op1: two, RevOp1/RevOp4: one); when
    empty, fresh ids are derived from the anchor.
    """

    kind: str
    vertex: str | None = None
    edges: tuple[Edge, ...] = ()
    new_ids: tuple[str, ...] = ()
    overlapping: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown operation kind {self.kind!r}")
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        object.__setattr__(self, "new_ids", tuple(self.new_ids))

    @property
    def edge(self) -> Edge:
        return self.edges[0]

    def to_dict(self) -> dict:
        anchors: dict = {}
        if self.vertex is not None:
            anchors["vertex"] = self.vertex
        if self.edges:
            anchors["edges"] = [{"from": e.src, "to": e.dst, "label": e.label} for e in self.edges]
        if self.new_ids:
            anchors["new_ids"] = list(self.new_ids)
        return {"kind": self.kind, "anchors": anchors}

    @classmethod
    def from_dict(cls, data: dict) -> "Site":
        anchors = data.get("anchors", {})
        edges = tuple(Edge(str(e["from"]), str(e["to"]), e["label"]) for e in anchors.get("edges", ()))
        return cls(data["kind"], anchors.get("vertex"), edges, tuple(anchors.get("new_ids", ())))

    def __str__(self):
        parts = [self.kind]
        if self.vertex is not None:
            parts.append(f"at {self.vertex}")
        if self.edges:
            parts.append("on " + " ".join(str(e) for e in self.edges))
        if self.new_ids:
            parts.append("new " + ",".join(self.new_ids))
        return " ".join(parts)


# pattern matching; each matcher returns the data needed for the rewrite

def _require_edge(g: Multigraph, e: Edge):
    if not g.has_edge(e):
        raise PatternMismatch(f"edge {e} not in graph")


def _index1_edges(g: Multigraph, v: str) -> tuple[Edge, Edge]:
    if v not in g:
        raise PatternMismatch(f"vertex {v!r} not in graph")
    inc = g.incident(v)
    ins = [e for e in inc if e.dst == v and e.src != v]
    outs = [e for e in inc if e.src == v and e.dst != v]
    if len(inc) != 2 or len(ins) != 1 or len(outs) != 1:
        raise PatternMismatch(f"vertex {v!r} is not an index-1 vertex")
    return ins[0], outs[0]


def _match_op1(g, v):
    ein, eout = _index1_edges(g, v)
    return ein, eout


def _match_op2(g, target):
    _require_edge(g, target)
    p, q = target.src, target.dst
    op, oq = g.other_edge(p, target), g.other_edge(q, target)
    if op.src != p or oq.src != q:
        raise PatternMismatch(f"Op2 at {target}: flanking edges must leave both endpoints")
    if op.label != oq.label:
        raise PatternMismatch(f"Op2 at {target}: flanking labels differ ({op.label} vs {oq.label})")
    return op, oq


def _match_op3(g, target):
    _require_edge(g, target)
    p, q = target.src, target.dst
    op, oq = g.other_edge(p, target), g.other_edge(q, target)
    if op.dst != p or oq.dst != q:
        raise PatternMismatch(f"Op3 at {target}: flanking edges must enter both endpoints")
    if op.label != oq.label:
        raise PatternMismatch(f"Op3 at {target}: flanking labels differ ({op.label} vs {oq.label})")
    return op, oq


def _match_op4(g, edge1, edge2):
    _require_edge(g, edge1)
    _require_edge(g, edge2)
    if edge1.dst != edge2.src:
        raise PatternMismatch(f"Op4: {edge1} and {edge2} do not meet head to tail")
    b = edge1.dst
    ein, eout = _index1_edges(g, b)
    if (ein, eout) != (edge1, edge2):
        raise PatternMismatch(f"Op4: {edge1}, {edge2} are not the two edges at {b!r}")
    a, c = edge1.src, edge2.dst
    if a == c:
        raise PatternMismatch("Op4 needs a cycle with at least three vertices")
    oa, oc = g.other_edge(a, edge1), g.other_edge(c, edge2)
    if oa.src != a or oa.label != edge2.label:
        raise PatternMismatch(f"Op4 at {b!r}: other edge at {a!r} must leave it with label {edge2.label}")
    if oc.dst != c or oc.label != edge1.label:
        raise PatternMismatch(f"Op4 at {b!r}: other edge at {c!r} must enter it with label {edge1.label}")
    return oa, oc


def _match_rev1(g, edge):
    _require_edge(g, edge)
    p, q = edge.src, edge.dst
    op, oq = g.other_edge(p, edge), g.other_edge(q, edge)
    if op.dst != p or oq.src != q:
        raise PatternMismatch(f"RevOp1 at {edge}: both endpoints must have index 1")
    if op.label + oq.label != edge.label:
        raise PatternMismatch(f"RevOp1 at {edge}: flanking labels {op.label}+{oq.label} != {edge.label}")
    return op, oq


def _match_rev2(g, edge):
    op, oq = _match_op2(g, edge)
    if edge.label <= op.label:
        raise NonPositiveLabel(f"RevOp2 at {edge}: label would drop to {edge.label - op.label}")
    return op, oq


def _match_rev3(g, edge):
    op, oq = _match_op3(g, edge)
    if edge.label <= op.label:
        raise NonPositiveLabel(f"RevOp3 at {edge}: label would drop to {edge.label - op.label}")
    return op, oq


def _match_rev4(g, edge):
    _require_edge(g, edge)
    p, q = edge.src, edge.dst
    op, oq = g.other_edge(p, edge), g.other_edge(q, edge)
    if op.src != p or oq.dst != q:
        raise PatternMismatch(f"RevOp4 at {edge}: needs index 0 at the source and index 2 at the target")
    if op.label + oq.label != edge.label:
        raise PatternMismatch(f"RevOp4 at {edge}: flanking labels {op.label}+{oq.label} != {edge.label}")
    return op, oq


def _match(g: Multigraph, site: Site):
    kind = site.kind
    try:
        if kind == "Op1":
            return _match_op1(g, site.vertex)
        if len(site.edges) != (2 if kind == "Op4" else 1):
            raise PatternMismatch(f"{kind} site has {len(site.edges)} anchor edges")
        if kind == "Op2":
            return _match_op2(g, site.edge)
        if kind == "Op3":
            return _match_op3(g, site.edge)
        if kind == "Op4":
            return _match_op4(g, *site.edges)
        return {"RevOp1": _match_rev1, "RevOp2": _match_rev2, "RevOp3": _match_rev3, "RevOp4": _match_rev4}[kind](
            g, site.edge
        )
    except GraphError as exc:
        # other_edge on a vertex of the wrong degree
        raise PatternMismatch(str(exc)) from None


def _site_vertices(g: Multigraph, site: Site, matched) -> list[str]:
    """Vertices touched by the local picture (with repetition if it wraps around)."""
    if site.kind == "Op1":
        ein, eout = matched
        return [ein.src, site.vertex, eout.dst]
    if site.kind == "Op4":
        oa, oc = matched
        e1, e2 = site.edges
        return [oa.other(e1.src), e1.src, e1.dst, e2.dst, oc.other(e2.dst)]
    e = site.edge
    op, oq = matched
    return [op.other(e.src), e.src, e.dst, oq.other(e.dst)]


def apply_with_inverse(g: Multigraph, site: Site) -> tuple[Multigraph, Site]:
    """Apply the operation at ``site``; also return the site that undoes it."""
    matched = _match(g, site)
    kind = site.kind
    taken = set(g.vertices)

    if kind == "Op1":
        ein, eout = matched
        v = site.vertex
        if site.new_ids:
            if len(site.new_ids) != 2 or len(set(site.new_ids)) != 2:
                raise PatternMismatch("Op1 needs two distinct new ids")
            p1, p2 = site.new_ids
            clash = (taken - {v}) & {p1, p2}
            if clash:
                raise PatternMismatch(f"Op1 new ids already in use: {sorted(clash)}")
        else:
            p1 = fresh_id(taken, f"{v}'")
            p2 = fresh_id(taken | {p1}, f"{v}''")
        a, b = ein.label, eout.label
        new = Edge(p1, p2, a + b)
        g2 = g.rewrite(
            remove_edges=[ein, eout],
            remove_vertices=[v],
            add_vertices=[p1, p2],
            add_edges=[Edge(ein.src, p1, a), new, Edge(p2, eout.dst, b)],
        )
        return g2, Site("RevOp1", edges=(new,), new_ids=(v,))

    if kind in ("Op2", "Op3"):
        flank, _ = matched
        t = site.edge
        new = Edge(t.src, t.dst, t.label + flank.label)
        return g.relabel(t, new.label), Site("Rev" + kind, edges=(new,))

    if kind == "Op4":
        e1, e2 = site.edges
        new = Edge(e1.src, e2.dst, e1.label + e2.label)
        g2 = g.rewrite(remove_edges=[e1, e2], remove_vertices=[e1.dst], add_edges=[new])
        return g2, Site("RevOp4", edges=(new,), new_ids=(e1.dst,))

    e = site.edge
    op, oq = matched
    if kind == "RevOp1":
        # op enters e.src with label x1, oq leaves e.dst with label x2
        r = site.new_ids[0] if site.new_ids else fresh_id(taken - {e.src, e.dst}, e.src)
        if r in taken - {e.src, e.dst}:
            raise PatternMismatch(f"RevOp1 new id {r!r} already in use")
        g2 = g.rewrite(
            remove_edges=[e, op, oq],
            remove_vertices=[e.src, e.dst],
            add_vertices=[r],
            add_edges=[Edge(op.src, r, op.label), Edge(r, oq.dst, oq.label)],
        )
        return g2, Site("Op1", vertex=r, new_ids=(e.src, e.dst))

    if kind in ("RevOp2", "RevOp3"):
        new = Edge(e.src, e.dst, e.label - op.label)
        return g.relabel(e, new.label), Site(kind[3:], edges=(new,))

    # RevOp4: p -x1-> (op), (oq) -x2-> q, split p -l-> q into p -x2-> r -x1-> q
    r = site.new_ids[0] if site.new_ids else fresh_id(taken, f"{e.src}.{e.dst}")
    if r in taken:
        raise PatternMismatch(f"RevOp4 new id {r!r} already in use")
    x1, x2 = op.label, oq.label
    first, second = Edge(e.src, r, x2), Edge(r, e.dst, x1)
    g2 = g.rewrite(remove_edges=[e], add_vertices=[r], add_edges=[first, second])
    return g2, Site("Op4", edges=(first, second))


def apply(g: Multigraph, site: Site) -> Multigraph:
    return apply_with_inverse(g, site)[0]


def apply_op1(g: Multigraph, vertex: str, new_ids: tuple[str, str] | None = None) -> Multigraph:
    return apply(g, Site("Op1", vertex=vertex, new_ids=new_ids or ()))


def apply_op2(g: Multigraph, target_edge) -> Multigraph:
    return apply(g, Site("Op2", edges=(Edge(*target_edge),)))


def apply_op3(g: Multigraph, target_edge) -> Multigraph:
    return apply(g, Site("Op3", edges=(Edge(*target_edge),)))


def apply_op4(g: Multigraph, edge1, edge2) -> Multigraph:
    return apply(g, Site("Op4", edges=(Edge(*edge1), Edge(*edge2))))


def apply_reverse(g: Multigraph, site: Site) -> Multigraph:
    if site.kind not in REVERSE_KINDS:
        raise PatternMismatch(f"{site.kind} is not a reverse operation")
    return apply(g, site)


def find_sites(g: Multigraph, kind: str) -> list[Site]:
    """Every occurrence of the pattern for ``kind``, in canonical cycle order."""
    validate(g)
    sites = []
    for comp in connected_components(g):
        order = cycle_order(comp)
        if kind in ("Op1", "Op4"):
            candidates = []
            for v in order.vertices:
                try:
                    ein, eout = _index1_edges(g, v)
                except PatternMismatch:
                    continue
                candidates.append(Site(kind, vertex=v) if kind == "Op1" else Site(kind, edges=(ein, eout)))
        else:
            candidates = [Site(kind, edges=(e,)) for e in dict.fromkeys(order.edges)]
        for site in candidates:
            try:
                matched = _match(g, site)
            except PatternMismatch:
                continue
            touched = _site_vertices(g, site, matched)
            sites.append(replace(site, overlapping=len(set(touched)) < len(touched)))
    return sites


def find_all_sites(g: Multigraph, kinds=FORWARD_KINDS) -> list[Site]:
    return [s for kind in kinds for s in find_sites(g, kind)]


def result_label(g: Multigraph, site: Site) -> int:
    """Label of the edge an operation creates or relabels (without applying it)."""
    matched = _match(g, site)
    if site.kind == "Op1":
        return sum(e.label for e in matched)
    if site.kind == "Op4":
        return sum(e.label for e in site.edges)
    if site.kind in ("Op2", "Op3"):
        return site.edge.label + matched[0].label
    raise ValueError("result_label is defined for forward operations")


@dataclass(frozen=True)
class OperationTrace:
    base: Multigraph
    steps: tuple[Site, ...] = ()

    def to_dict(self) -> dict:
        return {"base": graph_to_dict(self.base), "steps": [s.to_dict() for s in self.steps]}

    @classmethod
    def from_dict(cls, data: dict) -> "OperationTrace":
        if not isinstance(data, dict) or "base" not in data:
            raise GraphError("trace document needs 'base' and 'steps'")
        return cls(graph_from_dict(data["base"]), tuple(Site.from_dict(s) for s in data.get("steps", ())))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "OperationTrace":
        return cls.from_dict(json.loads(text))


def replay(trace: OperationTrace) -> Multigraph:
    """Apply the steps of a trace to its base, validating every intermediate graph."""
    g = trace.base
    validate(g)
    for i, site in enumerate(trace.steps):
        try:
            g = apply(g, site)
            validate(g)
        except PatternMismatch as exc:
            raise type(exc)(str(exc), step=i) from None
        except GraphError as exc:
            raise PatternMismatch(str(exc), step=i) from None
    return g


def random_trace(base: Multigraph, length: int, rng: random.Random, max_label: int = 50) -> OperationTrace:
    """A random forward trace from ``base`` whose labels never exceed ``max_label``.

    Op1 sites get explicit new ids ``<root>.<step>a`` / ``<root>.<step>b`` so
    the trace is self-describing.
    """
    g = base
    steps = []
    for step in range(length):
        options = [s for s in find_all_sites(g) if result_label(g, s) <= max_label]
        if not options:
            break
        site = rng.choice(options)
        if site.kind == "Op1":
            root = site.vertex.split(".")[0]
            site = replace(site, new_ids=(f"{root}.{step}a", f"{root}.{step}b"))
        g = apply(g, site)
        steps.append(site)
    return OperationTrace(base, tuple(steps))
