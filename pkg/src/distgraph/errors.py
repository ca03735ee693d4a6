"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class DistGraphError(Exception):
    """Base class for every error raised by :mod:`distgraph`."""


class InvalidReferenceError(DistGraphError, KeyError):
    """A vertex or edge id that does not exist in the graph."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class ValidationError(DistGraphError):
    """A graph failed structural validation.

    ``problems`` holds the :class:`~distgraph.model.Problem` entries of the
    validation report.
    """

    def __init__(self, problems):
        self.problems = tuple(problems)
        lines = "; ".join(p.message for p in self.problems)
        super().__init__(f"invalid distinguished graph: {lines}")


class IncompleteMappingError(DistGraphError, KeyError):
    """An edge mapping does not cover every edge of a word."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class ContractViolation(DistGraphError, ValueError):
    """An argument breaks the documented precondition of an operation."""


class NotASurfaceError(DistGraphError, ValueError):
    """Surface invariants were requested for a complex that is not a closed surface."""


class ResourceError(DistGraphError, RuntimeError):
    """A configured resource cap was exceeded.

    ``cap`` names the cap (``"max_edges"``, ``"max_candidates"`` or
    ``"time_limit"``) and ``limit`` its configured value.
    """

    def __init__(self, cap: str, limit, detail: str = ""):
        self.cap = cap
        self.limit = limit
        msg = f"resource cap {cap}={limit} exceeded"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class ParseError(DistGraphError, ValueError):
    """Malformed DGF text, with a 1-based line and column."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")
