"""Labeled multigraphs describing circle actions on 4-manifolds with isolated fixed points."""

from .fpdata import FixedPointData, InvariantReport, chi_y, index_counts, invariant_report, todd_genus
from .multigraph import Edge, Multigraph, fixed_point_data, is_realizable_candidate, validate
from .operations import OperationTrace, Site, apply, find_sites, replay
from .plumbing import PlumbingSequence, base_sequence, derived_graph, realize
from .reduction import realizability_check, reduce_to_semifree

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "FixedPointData",
    "InvariantReport",
    "Multigraph",
    "OperationTrace",
    "PlumbingSequence",
    "Site",
    "apply",
    "base_sequence",
    "chi_y",
    "derived_graph",
    "find_sites",
    "fixed_point_data",
    "index_counts",
    "invariant_report",
    "is_realizable_candidate",
    "realizability_check",
    "realize",
    "reduce_to_semifree",
    "replay",
    "todd_genus",
    "validate",
]
