"""Exception types shared across the package."""

from __future__ import annotations


class BiasGraphError(Exception):
    """Base class for all library errors."""


class GraphError(BiasGraphError):
    """Base class for graph construction and validation errors."""


class CycleDetected(GraphError):
    """The graph (restricted to useful vertices) contains a cycle."""


class NoSourceSinkPath(GraphError):
    """No path from the source to the sink exists."""


class NegativeCost(GraphError):
    """An edge cost is negative."""


class UnknownInstance(BiasGraphError):
    """Requested named instance does not exist."""


class ZeroOptimalCost(BiasGraphError):
    """Cost ratio is undefined because the cheapest path costs zero."""


class BiasNotAboveC(BiasGraphError):
    """Fan threshold formulas require the bias to be at least the growth factor."""


class NoDominantPath(BiasGraphError):
    """The graph has no path that is both cheapest and uniquely quickest."""


class TooLarge(BiasGraphError):
    """Instance exceeds the brute-force enumeration guard."""
