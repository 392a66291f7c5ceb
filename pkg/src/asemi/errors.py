"""Exception hierarchy shared by every module of the package."""


class SemiNormError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(SemiNormError, ValueError):
    """Operands have incompatible or non-square shapes."""


class NotHermitian(SemiNormError, ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class ConvergenceFailure(SemiNormError, RuntimeError):
    """An iterative kernel exceeded its iteration cap."""


class NotPSD(SemiNormError, ValueError):
    """A matrix has an eigenvalue below the allowed negative cutoff."""


class NotInBA(SemiNormError, ValueError):
    """The operator admits no A-adjoint (R(T*A) is not inside R(A))."""


class NotABounded(SemiNormError, ValueError):
    """The operator does not annihilate null(A) in the A-seminorm."""


class AlphaOutOfRange(SemiNormError, ValueError):
    """The interpolation weight is outside the admissible interval."""


class PreconditionUnmet(SemiNormError, ValueError):
    """A conditional inequality was asked for an operand pair violating its hypothesis."""


class ParseError(SemiNormError, ValueError):
    """A matrix file could not be parsed."""
