"""Reduce a realizable multigraph to semi-free cycles by reverse operations.

Take an edge p -> q whose label l is maximal (l > 1).  The indices of p
and q decide which reverse operation removes or lowers it:

    (n_p, n_q) = (1, 1)  Case1  RevOp1  flanks x1 (into p) + x2 (out of q) = l
    (n_p, n_q) = (0, 1)  Case2  RevOp2  flanks x1 = x2 (both outgoing)
    (n_p, n_q) = (1, 2)  Case3  RevOp3  flanks x1 = x2 (both incoming)
    (n_p, n_q) = (0, 2)  Case4  RevOp4  flanks x1 (out of p) + x2 (into q) = l

The relation between the flanks is forced by the mod-l congruence of the
weights at p and q; if it fails the graph is not realizable.  Repeating
until every label is 1 leaves a semi-free graph, and inverting the applied
reverse operations gives a forward trace from that base.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    CircleGraphError,
    CongruenceViolation,
    NotCandidate,
    NotMaximal,
    NotReducible,
    PatternMismatch,
)
from .multigraph import (
    Edge,
    Multigraph,
    candidate_failure,
    connected_components,
    cycle_order,
    fixed_point_data,
    fresh_id,
    is_semi_free,
)
from .fpdata import todd_genus
from .operations import OperationTrace, Site, apply_with_inverse

CASES = {(1, 1): "Case1", (0, 1): "Case2", (1, 2): "Case3", (0, 2): "Case4"}
REVERSE_FOR_CASE = {"Case1": "RevOp1", "Case2": "RevOp2", "Case3": "RevOp3", "Case4": "RevOp4"}


class NotRealizable(CircleGraphError):
    def __init__(self, reason):
        super().__init__(f"graph is not realizable: {reason}")
        self.reason = reason


@dataclass(frozen=True)
class EdgeClass:
    case: str
    edge: Edge
    x1: int
    x2: int


def classify_edge(g: Multigraph, edge: Edge) -> EdgeClass:
    """Case of a maximal-label edge together with its flanking labels."""
    edge = Edge(*edge)
    if not g.has_edge(edge):
        raise PatternMismatch(f"edge {edge} not in graph")
    comp = next(c for c in connected_components(g) if edge.src in c)
    top = comp.max_label()
    if edge.label != top:
        raise NotMaximal(f"edge {edge} has label {edge.label}, component maximum is {top}")
    if edge.label <= 1:
        raise NotMaximal("maximal label is 1; nothing to reduce")
    p, q = edge.src, edge.dst
    case = CASES.get((g.index(p), g.index(q)))
    if case is None:
        raise NotReducible(f"edge {edge} joins indices {g.index(p)} -> {g.index(q)}")
    op, oq = g.other_edge(p, edge), g.other_edge(q, edge)
    x1, x2 = op.label, oq.label
    l = edge.label
    if case in ("Case1", "Case4"):
        if x1 + x2 != l:
            raise CongruenceViolation(f"{case} at {edge}: {x1} + {x2} != {l}")
    elif x1 != x2:
        raise CongruenceViolation(f"{case} at {edge}: flanking labels {x1} != {x2}")
    return EdgeClass(case, edge, x1, x2)


def reduction_measure(g: Multigraph) -> tuple[int, int]:
    top = g.max_label()
    return top, sum(1 for e in g.edges if e.label == top)


def select_edge(g: Multigraph) -> Edge:
    """Maximal-label edge whose source comes first in canonical cycle order."""
    order = cycle_order(g)
    k = len(order)
    top = g.max_label()
    best = None
    for i, (v, e) in enumerate(zip(order.vertices, order.edges)):
        if e.label != top:
            continue
        src_pos = i if e.src == v else (i + 1) % k
        key = (src_pos, i)
        if best is None or key < best[0]:
            best = (key, e)
    return best[1]


@dataclass(frozen=True)
class ReductionStep:
    edge: Edge
    case: str
    x1: int
    x2: int
    measure: tuple[int, int]
    reverse_site: Site
    forward_site: Site
    graph: Multigraph  # after the step

    def labels(self) -> list[int]:
        return sorted(e.label for e in self.graph.edges)


def reduce_step(g: Multigraph, step: int = 0, taken=()) -> ReductionStep:
    """One reverse operation at the canonical maximal edge of a connected graph.

    ``taken`` lists further ids a new vertex must avoid (other components).
    """
    if is_semi_free(g):
        raise NotMaximal("graph is already semi-free")
    measure = reduction_measure(g)
    if measure[0] <= 1:
        raise NotReducible("all labels are 1 but the graph is not semi-free")
    edge = select_edge(g)
    cls = classify_edge(g, edge)
    kind = REVERSE_FOR_CASE[cls.case]
    new_ids: tuple[str, ...] = ()
    if kind == "RevOp4":
        new_ids = (fresh_id(set(g.vertices) | set(taken), f"{edge.src}.s{step}"),)
    site = Site(kind, edges=(edge,), new_ids=new_ids)
    try:
        g2, forward = apply_with_inverse(g, site)
    except PatternMismatch as exc:
        raise NotReducible(f"{cls.case} at {edge}: {exc}") from None
    if not reduction_measure(g2) < measure:
        raise NotReducible(f"measure did not decrease at {edge}")
    return ReductionStep(edge, cls.case, cls.x1, cls.x2, measure, site, forward, g2)


@dataclass(frozen=True)
class ReductionResult:
    components: tuple[Multigraph, ...]
    bases: tuple[Multigraph, ...]
    traces: tuple[OperationTrace, ...]
    logs: tuple[tuple[ReductionStep, ...], ...]
    todd: int

    @property
    def trace(self) -> OperationTrace:
        if len(self.traces) != 1:
            raise ValueError("graph has several components; use traces")
        return self.traces[0]


def reduce_component(g: Multigraph, taken=()) -> tuple[Multigraph, OperationTrace, tuple[ReductionStep, ...]]:
    todd = todd_genus(fixed_point_data(g))
    budget = sum(e.label - 1 for e in g.edges)
    steps: list[ReductionStep] = []
    current = g
    while not is_semi_free(current):
        if len(steps) > budget:
            raise NotReducible("step budget exceeded")
        st = reduce_step(current, len(steps), taken)
        if todd_genus(fixed_point_data(st.graph)) != todd:
            raise NotReducible(f"Todd genus changed at step {len(steps)}")
        steps.append(st)
        current = st.graph
    forward = tuple(st.forward_site for st in reversed(steps))
    return current, OperationTrace(current, forward), tuple(steps)


def reduce_to_semifree(g: Multigraph) -> ReductionResult:
    reason = candidate_failure(g)
    if reason is not None:
        raise NotCandidate(reason)
    comps = tuple(connected_components(g))
    bases, traces, logs = [], [], []
    for comp in comps:
        base, trace, log = reduce_component(comp, set(g.vertices) - set(comp.vertices))
        bases.append(base)
        traces.append(trace)
        logs.append(log)
    todd = todd_genus(fixed_point_data(g))
    return ReductionResult(comps, tuple(bases), tuple(traces), tuple(logs), todd)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str | None = None
    result: ReductionResult | None = field(default=None, compare=False)
    detail: str = field(default="", compare=False)


def realizability_check(g: Multigraph) -> Verdict:
    """Accept with a reduction witness, or reject with a reason tag."""
    reason = candidate_failure(g)
    if reason is not None:
        return Verdict(False, reason)
    try:
        result = reduce_to_semifree(g)
    except (NotReducible, CongruenceViolation, NotMaximal) as exc:
        return Verdict(False, exc.reason if not isinstance(exc, NotMaximal) else "not-reducible", detail=str(exc))
    return Verdict(True, result=result)


def format_log(result: ReductionResult) -> str:
    lines = []
    for ci, (comp, log, base) in enumerate(zip(result.components, result.logs, result.bases)):
        lines.append(f"component {ci + 1}: {len(comp.vertices)} vertices, {len(log)} steps")
        for i, st in enumerate(log):
            lines.append(
                f"  step {i}: {st.case} {st.reverse_site.kind} at {st.edge}"
                f" measure={st.measure} flanks=({st.x1},{st.x2}) labels={st.labels()}"
            )
        lines.append(f"  base: {len(base.vertices)} vertices, semi-free")
    lines.append(f"todd: {result.todd}")
    return "\n".join(lines) + "\n"
