"""Exception types shared across the package."""


class SeminarAssignError(Exception):
    """Base class for all package errors."""


class InvalidInstanceError(SeminarAssignError):
    """Instance data violates a structural rule (row sums, capacity totals, groups)."""


class SchemaError(SeminarAssignError):
    """A file could not be parsed or fails schema validation.

    ``context`` carries the offending field path or line number when known.
    """

    def __init__(self, message: str, context: str | None = None):
        self.context = context
        super().__init__(message if context is None else f"{context}: {message}")


class InfeasibleAssignmentError(SeminarAssignError):
    """An operation required a feasible assignment but got one outside the capacity bounds."""


class InconsistentMoveError(SeminarAssignError):
    """A move's relocations do not match the assignment they are applied to."""


class NoMoveAvailable(SeminarAssignError):
    """The requested neighborhood has no applicable move in the current state."""


class ConfigError(SeminarAssignError):
    """A search or CLI configuration is invalid."""


class OracleGuardError(SeminarAssignError):
    """The exhaustive oracle refused an instance whose search space exceeds the guard."""


class RunCancelled(SeminarAssignError):
    """A search run was cancelled before consuming its evaluation budget."""
