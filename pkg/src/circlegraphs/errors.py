"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CircleGraphError(Exception):
    """Base class; ``reason`` is a short machine-readable tag."""

    reason = "error"


# fixed point data

class InvalidFixedPointData(CircleGraphError):
    reason = "invalid-data"


class EmptyData(CircleGraphError):
    reason = "empty-data"


class NotConstant(CircleGraphError):
    reason = "chi-y-not-constant"


class NonInteger(CircleGraphError):
    reason = "chi-y-non-integer"


class PoleCollision(CircleGraphError):
    reason = "pole-collision"


class ChiYMismatch(CircleGraphError):
    """chi_y is constant and integral but differs from (-1)^i N_i."""

    reason = "chi-y-mismatch"


class WrongDimension(CircleGraphError):
    reason = "wrong-dimension"


class NotSemiFree(CircleGraphError):
    reason = "not-semi-free"


# graphs

class GraphError(CircleGraphError):
    reason = "invalid-graph"


class NotTwoRegular(GraphError):
    reason = "two-regular"

    def __init__(self, vertex, degree):
        super().__init__(f"vertex {vertex!r} has degree {degree}, expected 2")
        self.vertex = vertex


class SelfLoop(GraphError):
    reason = "self-loop"

    def __init__(self, edge):
        super().__init__(f"self-loop {edge}")
        self.edge = edge


class BadLabel(GraphError):
    reason = "bad-label"

    def __init__(self, edge):
        super().__init__(f"edge label must be a positive integer: {edge}")
        self.edge = edge


class UnknownVertex(GraphError):
    reason = "unknown-vertex"


class DuplicateVertex(GraphError):
    reason = "duplicate-vertex"


class NotConnected(GraphError):
    reason = "not-connected"


# operations

class PatternMismatch(CircleGraphError):
    reason = "pattern-mismatch"

    def __init__(self, message, step=None):
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)
        self.step = step


class NonPositiveLabel(PatternMismatch):
    reason = "non-positive-label"


# reduction

class CongruenceViolation(CircleGraphError):
    reason = "congruence-violation"


class NotMaximal(CircleGraphError):
    reason = "not-maximal"


class NotReducible(CircleGraphError):
    reason = "not-reducible"


class NotCandidate(CircleGraphError):
    def __init__(self, reason):
        super().__init__(f"graph fails the {reason} condition")
        self.reason = reason


# plumbing

class PlumbingError(CircleGraphError):
    reason = "plumbing"

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class NotBasis(PlumbingError):
    reason = "not-basis"


class RecurrenceFail(PlumbingError):
    reason = "recurrence"


class ZeroFirstComponent(PlumbingError):
    reason = "zero-first-component"


class PatternVectorFail(PlumbingError):
    reason = "pattern-vector"

    def __init__(self, message, position=None, which=None):
        super().__init__(message, position)
        self.which = which


class SiteMismatch(PlumbingError):
    reason = "site-mismatch"


class PropertyAViolated(PlumbingError):
    reason = "property-a"


# constructors

class NotCoprime(CircleGraphError):
    """Labels or first components that must be coprime are not."""

    reason = "not-coprime"

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class DegenerateWeight(CircleGraphError):
    reason = "degenerate-weight"
