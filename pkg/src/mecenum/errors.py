"""Exception types shared across the package."""


class GraphError(ValueError):
    """A graph violates a structural invariant (self-loop, parallel edge, ...)."""


class GraphFormatError(GraphError):
    """Malformed text graph input."""


class NotChordal(GraphError):
    """An undirected part that must be chordal is not."""


class NotExtendable(GraphError):
    """The partially directed graph has no consistent extension."""


class NoAdmissibleVertex(NotExtendable):
    """The restricted MCS found no highest-label vertex without unvisited parents."""


class TooLarge(ValueError):
    """Input exceeds the brute-force oracle guard."""
