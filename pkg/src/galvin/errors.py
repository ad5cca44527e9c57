"""Exception hierarchy shared by the package."""

from __future__ import annotations


class GalvinError(Exception):
    """Base class for errors raised by this package."""


class GraphError(GalvinError, ValueError):
    """Malformed graph input (loops, out-of-range vertices, ...)."""


class ColouringError(GalvinError, ValueError):
    """A colouring is partial, out of range, or improper."""


class PartitionError(GalvinError, ValueError):
    """A vertex partition is not total over the graph."""


class PreconditionError(GalvinError, ValueError):
    """An operation was called on input outside its documented domain."""


class ScaleLimitError(GalvinError):
    """Refusal to run an exponential procedure above its documented size."""

    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class BudgetExceeded(GalvinError):
    """An enumeration ran out of its step budget before finishing."""

    def __init__(self, steps: int, partial: object = None) -> None:
        super().__init__(f"step budget exhausted after {steps} steps")
        self.steps = steps
        self.partial = partial


class KernelNotFound(GalvinError):
    """An induced subdigraph without a kernel was met where one was required."""

    def __init__(self, nodes: frozenset[int]) -> None:
        super().__init__(f"no kernel in induced subdigraph on {sorted(nodes)}")
        self.nodes = nodes


class CaseExhaustion(GalvinError, AssertionError):
    """No case of a block-by-block construction applied (should be unreachable)."""


class ConstructionInvariantError(GalvinError, AssertionError):
    """A construction step produced a block violating its local properness conditions."""


class RoundInvariantError(GalvinError, AssertionError):
    """The list-colouring round invariant (list size > remaining outdegree) broke."""
