"""Exception hierarchy shared by every module."""


class RometricError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RometricError, ValueError):
    """Malformed input: unknown labels, bad rationals, duplicate sets."""


class DomainError(RometricError, ValueError):
    """A value outside the admissible domain (negative distance, r <= 0)."""


class PreconditionError(RometricError, ValueError):
    """An operation was called on an input that violates its precondition."""


class GroundMismatchError(RometricError, ValueError):
    """Two objects that must share a ground set do not."""


class BudgetError(RometricError, ValueError):
    """A requested enumeration or search exceeds the supported size."""


class ValidationError(RometricError):
    """Input failed a structural check. ``violations`` holds the witnesses."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class InternalConsistencyError(RometricError, AssertionError):
    """A construction produced a result that contradicts a checked guarantee."""
