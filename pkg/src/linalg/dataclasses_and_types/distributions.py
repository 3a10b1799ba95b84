# Python
from dataclasses import dataclass

# 3rd Party
import numpy as np

# 1st Party


@dataclass(frozen=True)
class ResidualDistribution():
    """ Sampling distribution over the columns (or rows) of a residual B.

    Satisfies p_i >= floor * ||b_i||^2 / ||B||_F^2. When B is numerically zero the distribution is uniform and
    'uniform_fallback' is set.
    """
    probabilities: np.ndarray
    floor: float = 1.0
    uniform_fallback: bool = False

    @property
    def size(self) -> int:
        return self.probabilities.shape[0]


@dataclass(frozen=True)
class AdaptiveSelection():
    indices: np.ndarray
    distribution: ResidualDistribution


@dataclass(frozen=True)
class DiscreteDistribution():
    """ A distribution whose masses are integer multiples of 1/grid, with grid = 4n.

    'units[i]' is q_i * grid. The special index 'i_star' (the largest original mass) absorbs the rounding so the units
    sum to exactly 'grid'.
    """
    units: np.ndarray   # int64
    grid: int
    i_star: int

    @property
    def q(self) -> np.ndarray:
        return self.units / self.grid

    def inverse_cdf(self, points: np.ndarray) -> np.ndarray:
        """ Maps grid points h in [0, grid) to the smallest i with h < sum_{i' <= i} units[i']. """
        cumulative = np.cumsum(self.units)
        return np.searchsorted(cumulative, points, side="right")
