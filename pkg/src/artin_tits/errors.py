"""Exception types shared by the toolkit."""

from __future__ import annotations


class ArtinTitsError(Exception):
    """Base class for all toolkit errors."""


class GraphParseError(ArtinTitsError, ValueError):
    """Malformed graph file; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int, source: str = "<graph>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


class WordParseError(ArtinTitsError, ValueError):
    """Malformed word text; ``position`` is the 1-based token index."""

    def __init__(self, message: str, position: int, source: str = "<word>"):
        self.message = message
        self.position = position
        self.source = source
        super().__init__(f"{source}:{position}: {message}")


class GraphError(ArtinTitsError, ValueError):
    """A graph does not satisfy an operation's precondition."""


class NotSphericalError(GraphError):
    pass


class ResourceLimitError(ArtinTitsError):
    """A configured cap was exceeded; the instance is too large, not wrong."""


class UnsupportedBaseCase(ArtinTitsError):
    """A free-of-infinity, non-spherical piece has no base solver.

    The word problem is open for such groups in general, so this is a
    legitimate outcome rather than a crash.
    """

    def __init__(self, vertices, message: str | None = None):
        self.vertices = tuple(vertices)
        super().__init__(
            message
            or "no base solver for the free-of-infinity, non-spherical subgraph on {"
            + ", ".join(self.vertices)
            + "}"
        )


class DerivationError(ArtinTitsError, ValueError):
    """A serialized derivation or certificate is structurally malformed."""

    def __init__(self, message: str, path: str = "$"):
        self.path = path
        super().__init__(f"{path}: {message}")
