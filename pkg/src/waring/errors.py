"""Exception hierarchy shared by every module."""


class WaringError(Exception):
    """Base class for all package errors."""


class ScalarModeError(WaringError):
    """Exact and floating scalars were mixed without an explicit promotion."""


class ParseError(WaringError):
    """The polynomial text does not match the grammar."""


class PreconditionError(WaringError):
    """A documented mathematical precondition does not hold for the input."""


class GenericityError(PreconditionError):
    """A genericity assumption failed (degenerate input or unlucky draw)."""


class InternalConsistencyError(WaringError):
    """Two independent computations of the same quantity disagree.

    Raised when a cross-check that should hold as a theorem fails; always a
    bug or a numerically hopeless input, never a user error.
    """


class BudgetExhausted(WaringError):
    """A bounded search ran out of attempts.

    Carries the best partial result, if any, in ``self.partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class AmbiguousNumericsError(WaringError):
    """A floating-point predicate landed inside its ambiguity band."""
