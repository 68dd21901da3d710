"""Exception hierarchy."""


class KneserLabError(Exception):
    """Base class for all errors raised by kneser_lab."""


class MismatchError(KneserLabError, ValueError):
    """Operands live over different fields or have different lengths."""


class PreconditionError(KneserLabError, ValueError):
    """An operation was called outside its domain."""


class BudgetExceeded(KneserLabError):
    """An enumeration would exceed its hard cap.

    ``estimate`` is the size of the work that was refused, ``budget`` the cap.
    """

    def __init__(self, message: str, estimate: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget


class FormatError(KneserLabError, ValueError):
    """Malformed code, family or vector text."""


class InternalCheckError(KneserLabError, AssertionError):
    """A relation that holds unconditionally was observed to fail."""
