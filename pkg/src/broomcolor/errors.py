"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """Invalid caller input (bad vertex id, bad parameter, malformed witness)."""


class ParseError(InputError):
    """Malformed DIMACS or certificate content."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapacityError(RuntimeError):
    """A desk-scale limit was exceeded (exact-solver ceiling, sampling budget)."""


class InternalContradiction(RuntimeError):
    """A bound that should hold by construction was violated.

    Raised when an algorithmic invariant fails on an input for which no
    forbidden-subgraph witness can be found either, which means a bug.
    """

    def __init__(self, message: str, vertex: int | None = None, trace=None):
        self.vertex = vertex
        self.trace = trace
        super().__init__(message)
