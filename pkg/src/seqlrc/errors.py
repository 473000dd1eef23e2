"""Exception hierarchy shared by every layer of the package."""


class SlrcError(Exception):
    """Base class for all errors raised by this package."""


class NonPrime(SlrcError, ValueError):
    pass


class OutOfRange(SlrcError, ValueError):
    pass


class DegreeOutOfRange(SlrcError, ValueError):
    pass


class FieldMismatch(SlrcError, ValueError):
    pass


class DimensionMismatch(SlrcError, ValueError):
    pass


class NoSolution(SlrcError, ArithmeticError):
    """Raised by :func:`seqlrc.matrix.solve` for an inconsistent system."""


class ParameterViolation(SlrcError, ValueError):
    pass


class RankDrop(SlrcError, ValueError):
    pass


class DistanceUnknown(SlrcError, RuntimeError):
    pass


class NoRecovery(SlrcError, ValueError):
    """Some coordinate lies in the support of no dual codeword."""


class LocalityMismatch(SlrcError, ValueError):
    pass


class BudgetExceeded(SlrcError, RuntimeError):
    pass


class IndexOutOfRange(SlrcError, IndexError):
    pass


class ExpressionError(SlrcError, ValueError):
    """Malformed code expression; carries the offending column for diagnostics."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        super().__init__(message)
        self.text = text
        self.pos = pos

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^ {self.args[0]}"
