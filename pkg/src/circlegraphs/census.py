"""Exhaustive check of the realizability conditions on small cycles.

Every connected 2-regular loop-free multigraph is a cycle, determined up to
isomorphism by its signed label sequence modulo rotation and reflection.
For each such cycle within the bounds we evaluate the four conditions and,
for candidates, run the reduction and the plumbing realization.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import CircleGraphError
from .multigraph import canonical_signed_cycle, candidate_failure, graph_from_signed_labels
from .plumbing import derived_graph, realize, verify_conditions, verify_property_a
from .reduction import realizability_check

WORKERS_ENV = "CIRCLEGRAPHS_WORKERS"


def signed_cycles(length: int, max_label: int):
    """Canonical signed label sequences of the given length, one per isomorphism class."""
    labels = [s for l in range(1, max_label + 1) for s in (l, -l)]
    for seq in itertools.product(labels, repeat=length):
        if canonical_signed_cycle(seq) == seq:
            yield seq


def check_cycle(signed: tuple[int, ...]) -> dict:
    """Outcome record for one cycle."""
    g = graph_from_signed_labels(signed)
    reason = candidate_failure(g)
    if reason is not None:
        return {"signed": list(signed), "candidate": False, "outcome": reason}
    verdict = realizability_check(g)
    if not verdict.accepted:
        return {"signed": list(signed), "candidate": True, "outcome": verdict.reason, "detail": verdict.detail}
    try:
        seqs = realize(g)
        for s in seqs:
            verify_conditions(s)
            verify_property_a(s)
        if len(seqs) != 1 or derived_graph(seqs[0]) != g:
            raise CircleGraphError("derived graph differs from input")
    except CircleGraphError as exc:
        return {"signed": list(signed), "candidate": True, "outcome": "realize-failed", "detail": str(exc)}
    steps = sum(len(log) for log in verdict.result.logs)
    return {"signed": list(signed), "candidate": True, "outcome": "realized", "steps": steps}


@dataclass
class CensusReport:
    max_vertices: int
    max_label: int
    total: int = 0
    candidates: int = 0
    realized: int = 0
    rejected: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)
    by_length: dict = field(default_factory=dict)

    @property
    def not_reducible(self) -> int:
        return self.rejected["not-reducible"] + self.rejected["congruence-violation"]

    def to_dict(self) -> dict:
        return {
            "max_vertices": self.max_vertices,
            "max_label": self.max_label,
            "graphs": self.total,
            "candidates": self.candidates,
            "accepted_and_realized": self.realized,
            "not_reducible": self.not_reducible,
            "rejected": dict(sorted(self.rejected.items())),
            "by_length": {str(k): v for k, v in sorted(self.by_length.items())},
            "failures": self.failures,
        }


def worker_count(default: int = 1) -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, default)))
    except ValueError:
        return default


def run_census(max_vertices: int = 6, max_label: int = 4, workers: int | None = None) -> CensusReport:
    if workers is None:
        workers = worker_count()
    cycles = [s for k in range(2, max_vertices + 1) for s in signed_cycles(k, max_label)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(check_cycle, cycles, chunksize=64))
    else:
        records = [check_cycle(s) for s in cycles]
    report = CensusReport(max_vertices, max_label)
    for rec in records:
        k = len(rec["signed"])
        row = report.by_length.setdefault(k, {"graphs": 0, "candidates": 0, "realized": 0})
        report.total += 1
        row["graphs"] += 1
        if rec["candidate"]:
            report.candidates += 1
            row["candidates"] += 1
        if rec["outcome"] == "realized":
            report.realized += 1
            row["realized"] += 1
        else:
            report.rejected[rec["outcome"]] += 1
            if rec["candidate"]:
                report.failures.append(rec)
    return report
