"""Exception hierarchy shared by all modules."""


class KrylovError(Exception):
    """Base class for errors raised by cxkrylov."""


class DimensionError(KrylovError, ValueError):
    """Vector or operator sizes do not agree."""


class CapabilityError(KrylovError, TypeError):
    """An operator was asked for a product it cannot provide (A^T or A^H)."""


class InvalidInputError(KrylovError, ValueError):
    """Inputs do not satisfy a method's requirements."""


class BreakdownError(KrylovError, ArithmeticError):
    """A recurrence divisor or factorization pivot vanished.

    Attributes
    ----------
    name : str
        Name of the offending scalar (``"rho"``, ``"omega"``, ``"pivot"``...).
    row : int or None
        Row index, for factorization breakdowns.
    """

    def __init__(self, message, name=None, row=None):
        super().__init__(message)
        self.name = name
        self.row = row


class SingularMatrixError(KrylovError, ArithmeticError):
    """Dense LU found a (numerically) zero pivot."""

    def __init__(self, message, step):
        super().__init__(message)
        self.step = step


class MatrixMarketError(KrylovError, ValueError):
    """Malformed Matrix Market content."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedFormatError(MatrixMarketError):
    """Well-formed but unsupported Matrix Market variant (hermitian, array...)."""
