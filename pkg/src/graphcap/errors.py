"""Exception types shared across the package."""


class GraphcapError(Exception):
    """Base class for all graphcap-specific errors."""


class CapExceeded(GraphcapError):
    """A size or resource cap would be exceeded (graph too large to materialize)."""


class SearchCapExceeded(GraphcapError):
    """A backtracking search exhausted its node budget before reaching a verdict.

    Distinct from a definitive "no solution exists" answer.
    """


class SolveTimeout(GraphcapError):
    """An exact solver exceeded its time budget before proving optimality."""


class NonConstantC(GraphcapError):
    """The eigenspace constant varies across edges, so the spectral converse
    machinery does not apply to this graph."""

    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = values


class GraphSpecError(GraphcapError):
    """A graph spec string failed to parse; carries the offending position."""

    def __init__(self, message, position=0):
        super().__init__(f"{message} (at position {position})")
        self.position = position
