"""Exception hierarchy shared by every module."""


class CliffordError(Exception):
    """Base class for all errors raised by cliffdet."""


class MetricMismatch(CliffordError, ValueError):
    """Operands carry different metrics."""


class GradeOutOfRange(CliffordError, ValueError):
    """A grade lies outside 0..d (or 0..6 where no dimension is known)."""


class DimensionZero(CliffordError, ValueError):
    """Operation needs at least one basis vector."""


class UnsupportedDimension(CliffordError, ValueError):
    """Dimension outside what the requested operation supports."""


class Singular(CliffordError, ZeroDivisionError):
    """Determinant is zero, so no inverse exists."""


class InternalNonScalar(CliffordError, ArithmeticError):
    """A determinant formula left a non-scalar residue. Indicates a bug."""


class NonScalarResult(CliffordError, ValueError):
    """An expression evaluated in determinant mode did not give a scalar."""


class NotScalarBladeForm(CliffordError, ValueError):
    """Input is not a scalar plus a single blade."""


class NonScalarSymbolic(CliffordError, ArithmeticError):
    """Symbolic expansion of a determinant form has non-scalar terms."""


class ParseError(CliffordError, ValueError):
    """Malformed multivector literal, metric spec or grade list."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
            if text:
                message += f": {text!r}"
        super().__init__(message)
