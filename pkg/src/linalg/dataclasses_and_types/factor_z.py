# Python
from enum import Enum, auto
from dataclasses import dataclass

# 3rd Party
import numpy as np

# 1st Party


class SvdMode(Enum):
    Deterministic = auto()
    Randomized = auto()
    Sparse = auto()


@dataclass(frozen=True)
class FactorZ():
    """ Orthonormal n x k factor whose projection AZZ^T is a (1+epsilon) rank-k approximation of A. """
    z: np.ndarray
    mode: SvdMode
    epsilon: float

    @property
    def k(self) -> int:
        return self.z.shape[1]
