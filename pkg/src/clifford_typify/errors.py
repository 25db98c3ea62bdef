"""Exception hierarchy shared by every module."""


class CliffordError(Exception):
    """Base class for all library errors."""


class InputError(CliffordError, ValueError):
    """Invalid argument: bad mask, mismatched signatures, rank out of range..."""


class ParseError(InputError):
    """Malformed multivector text or spec line."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class LimitError(InputError):
    """A size cap (dimension, enumeration budget) was exceeded."""


class ConvergenceError(CliffordError, ArithmeticError):
    """A series failed to converge within the allowed number of terms."""
