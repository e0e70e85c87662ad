"""Exception hierarchy.

Domain errors (``MinfamError`` and subclasses other than ``ParseError``) map
to CLI exit code 1, parse errors to exit code 2.
"""


class MinfamError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MinfamError, ValueError):
    """Malformed user input: basis names, labels, vector literals."""

    def __init__(self, message, text=None, column=None):
        self.text = text
        self.column = column
        if column is not None:
            message = f"1:{column + 1}: {message}"
        super().__init__(message)


class LatticeMismatch(MinfamError, ValueError):
    pass


class InvalidRoot(MinfamError, ValueError):
    pass


class InvalidSubsystem(MinfamError, ValueError):
    pass


class InvalidPair(MinfamError, ValueError):
    pass


class NotPolarized(MinfamError, ValueError):
    """The divisor class is not nef (or violates a chain precondition)."""


class NotRealizable(MinfamError):
    """A lattice-valid label has no consistent geometric realization."""


class NotMinimal(MinfamError):
    pass


class AlreadyMinimal(MinfamError):
    pass


class NotConical(MinfamError):
    pass


class TheoremCheckFailed(MinfamError):
    """A statement that must hold for every input was violated."""


class InvariantViolation(MinfamError, AssertionError):
    """Internal consistency check failed; indicates a bug."""
