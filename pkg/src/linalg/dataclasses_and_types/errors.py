# Python
from typing import Optional

# 3rd Party

# 1st Party


class CurError(Exception):
    """ Base-class for every error raised by OptimalCur. """


class CurArgumentError(CurError, ValueError):
    """ Invalid input: bad shapes, out-of-range parameters, dimensions too small for the requested constants. """


class CombinatorialBudgetError(CurArgumentError):
    """ An exhaustive search was requested over more candidates than the configured budget allows. """


class MatrixMarketParseError(CurArgumentError):

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class NumericalFailureError(CurError, ArithmeticError):
    """ A factorization did not converge, or a pipeline exhausted its retry budget. """


class ConditioningError(NumericalFailureError):
    """ An inverse was requested of a numerically singular factor. """


class RankDeficientSketchError(NumericalFailureError):
    """ A sampled sketch lost rank. Randomized pipelines retry with fresh randomness. """


class InvariantViolationError(CurError, AssertionError):
    """ A guaranteed inequality or internal invariant failed. Always a bug or a numerical breakdown. """
