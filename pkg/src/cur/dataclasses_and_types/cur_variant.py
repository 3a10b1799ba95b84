# Python
from enum import Enum, auto

# 3rd Party

# 1st Party


class CurVariant(Enum):
    Linear = auto()
    Sparse = auto()
    Deterministic = auto()


class CurFidelity(Enum):

    def __new__(cls, value, text):
        """ Creates a new Enum object which accepts a value *and* a descriptive text string """
        obj = object.__new__(cls)
        obj._value_ = value
        obj.text = text
        return obj

    Paper = 1, "Proven constants - c and r exactly as the guarantees require"
    Heuristic = 2, "Desk-scale constants - smaller c2/r2 factors, leverage sample sizes clamped to the input"
