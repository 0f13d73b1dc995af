"""Exception hierarchy shared by every module."""
from __future__ import annotations


class EfxError(Exception):
    """Base class for all errors raised by efxcost."""


class InstanceError(EfxError, ValueError):
    """A document or in-memory object violates the data model.

    ``location`` is a JSON-path-like pointer (``cost_model.costs[2][0]``)
    naming where the problem was found, or ``""`` for the document root.
    """

    kind = "invalid"

    def __init__(self, message: str, location: str = "") -> None:
        self.location = location
        where = f" at {location}" if location else ""
        super().__init__(f"{self.kind}{where}: {message}")


class MalformedDocument(InstanceError):
    kind = "malformed document"


class DimensionMismatch(InstanceError):
    kind = "dimension mismatch"


class NegativeNumber(InstanceError):
    kind = "negative number"


class OverflowRisk(InstanceError):
    kind = "overflow risk"


class InvalidAllocation(InstanceError):
    kind = "invalid allocation"


class BudgetExceeded(EfxError):
    """The instance is too large for the requested solver and budget."""


class PreconditionError(EfxError, ValueError):
    """The solver does not apply to this instance (wrong cost model, n < m, ...)."""


class InternalInconsistency(EfxError, RuntimeError):
    """A solver produced an allocation that fails its own verification."""
