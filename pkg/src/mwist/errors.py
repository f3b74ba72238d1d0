"""Exception types shared across the package."""


class MwistError(Exception):
    """Base class for all package errors."""


class GraphFormatError(MwistError):
    """Instance text could not be parsed or fails basic validation."""


class DisconnectedGraphError(MwistError):
    """The operation requires a connected graph."""


class InvalidTreeError(MwistError):
    """An edge set claimed to be a spanning tree is not one."""


class BudgetExceededError(MwistError):
    """An exhaustive computation exceeded its configured budget."""


class RetriesExhaustedError(MwistError):
    """A generator failed to produce a valid instance within its retry budget."""


class NotClawFreeError(MwistError):
    """The claw-free solver was invoked on a graph containing an induced claw."""

    def __init__(self, witness=None):
        self.witness = witness
        detail = f" (witness claw: {witness})" if witness else ""
        super().__init__(f"graph is not claw-free{detail}")


class StructureError(MwistError):
    """A structural guarantee of the construction failed.

    On claw-free, fully reduced input this indicates an implementation bug;
    otherwise it means the input violated a precondition.
    """


class CaseExhaustionError(StructureError):
    """No settling case matched a component; never ignored silently."""


class CertificateViolationError(MwistError):
    """A solver produced a tree violating its own certified bound."""
