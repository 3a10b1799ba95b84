# Python
from enum import Enum

# 3rd Party

# 1st Party


class ExitCode(Enum):

    def __new__(cls, value, text):
        """ Creates a new Enum object which accepts a value *and* a descriptive text string """
        obj = object.__new__(cls)
        obj._value_ = value
        obj.text = text
        return obj

    Success = 0, "Finished without errors"
    ArgumentError = 2, "Invalid arguments, settings or input file"
    NumericalFailure = 3, "A factorization failed or a guaranteed bound was violated"
