"""Exception types shared across the toolkit.

Every domain failure raises a subclass of :class:`DomainError` carrying a
machine-readable ``code`` so the command line layer can emit structured
errors and exit with status 1, keeping status 2 for usage problems.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for input data that is well-formed JSON but invalid mathematics."""

    code = "domain-error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self), "details": self.details}


class GraphFormatError(DomainError):
    """Graph data violates the multigraph contract (duplicate ids, dangling endpoints)."""

    code = "graph-format"


class PathError(DomainError):
    """Edge sequence is not a path of the host graph."""

    code = "path"


class NotACycle(PathError):
    """A cycle-only operation received a path whose source and range differ."""

    code = "not-a-cycle"


class NonTotalPresentation(DomainError):
    """Explicit atomic data leaves some basis index without an image under pi."""

    code = "non-total-presentation"


class UnboundedLeftRegularComponent(DomainError):
    """Explicit data claims a root whose forward path space is infinite."""

    code = "unbounded-left-regular-component"


class InvalidColoring(DomainError):
    """Edge coloring is not strong or does not match the graph."""

    code = "invalid-coloring"


class PartialAutomaton(DomainError):
    """Backward transition is undefined for some (vertex, color) pair."""

    code = "partial-automaton"


class EnumerationOverflow(DomainError):
    """A brute-force search space exceeds the configured budget."""

    code = "enumeration-overflow"
