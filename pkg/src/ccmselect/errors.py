"""Exception hierarchy shared by every module in the package.

All failures raised deliberately by this package derive from CCMError so
callers (and the CLI) can distinguish domain failures from genuine bugs.
"""

from __future__ import annotations


class CCMError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CCMError, ValueError):
    """Input violates a documented precondition (out of range, inconsistent)."""


class NonGraphicalSequenceError(DomainError):
    """Degree sequence admits no simple graph.

    ``violated_index`` is the smallest 1-based index k at which the
    Erdos-Gallai inequality fails, or 0 when the degree sum is odd.
    """

    def __init__(self, message: str, violated_index: int):
        super().__init__(message)
        self.violated_index = violated_index


class TypedAttributeMissingError(DomainError):
    """An operation requiring node types met an untyped node."""


class EmptyNetworkError(DomainError):
    """A state filter produced a network with no qualifying providers."""


class DegeneratePriorError(DomainError):
    """A prior fit collapsed (zero variance); a variance floor may help."""


class ParseError(CCMError):
    """A malformed row in an input file. ``line`` is the 1-based file line."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class SchemaError(CCMError):
    """An input file or config is missing required columns/keys."""


class NumericError(CCMError):
    """A numeric routine failed to converge.

    ``trace`` carries method-specific detail, e.g. the worst quadrature
    subintervals at the point of failure.
    """

    def __init__(self, message: str, trace: list | None = None):
        super().__init__(message)
        self.trace = trace or []


class OptimizationError(NumericError):
    """Newton ascent failed to converge within the iteration budget."""


class DegeneratePosteriorError(NumericError):
    """The curvature at the posterior mode is singular or not negative definite."""


class OracleRefusalError(DomainError):
    """Exhaustive enumeration was requested beyond its tractable size limit."""
