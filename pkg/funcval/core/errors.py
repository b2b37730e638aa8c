"""
Error Types

Named failures raised by the geometry, function and valuation layers.
Every error carries the process exit code the CLI maps it to.
"""

from typing import Optional


class FuncvalError(Exception):
    """Base class for all library errors"""

    exit_code = 1

    def __init__(self, message: str = ""):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__


class DimensionMismatch(FuncvalError):
    """Operands live in different ambient dimensions"""


class Unbounded(FuncvalError):
    """A set or integral that must be bounded is not"""


class OriginNotInterior(FuncvalError):
    """The origin is not an interior point where it has to be"""


class OriginNotInDomain(FuncvalError):
    """The origin is outside the domain of a restricted function"""


class ParameterOutOfRange(FuncvalError):
    """A numeric parameter violates its admissible range"""


class NotCoercive(FuncvalError):
    """The function does not tend to +infinity at infinity"""


class DerivativeUnavailable(FuncvalError):
    """The requested derivative order does not exist for the preset"""


class QuadratureNotConverged(FuncvalError):
    """Adaptive integration did not reach the requested tolerance"""


class GridBelowMin(FuncvalError):
    """A sublevel grid value lies below the minimum of a function"""


class IllConditioned(FuncvalError):
    """A linear solve exceeded the configured condition number limit"""


class NonConvexMin(FuncvalError):
    """The pointwise minimum of two functions is not convex"""


class EmptyResult(FuncvalError):
    """An operation that needs a nonempty result produced an empty one"""


class ComplexityExceeded(FuncvalError):
    """The input exceeds the configured dimension or piece-count guard"""


class UnsupportedInput(FuncvalError):
    """The operation is not defined for this kind of input"""


class UsageError(FuncvalError):
    """Invalid command-line usage"""

    exit_code = 2


class ParseError(FuncvalError):
    """Malformed JSON or schema violation in an input file"""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column
