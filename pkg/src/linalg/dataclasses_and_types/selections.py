# Python
from dataclasses import dataclass

# 3rd Party
import numpy as np

# 1st Party


@dataclass(frozen=True)
class SamplingPair():
    """ Random sampling with replacement: the selection Omega (n x r) and the rescaling D (r x r).

    Omega is stored as the r drawn indices (repeats allowed), D as its diagonal 1/sqrt(p_i * r).
    """
    indices: np.ndarray         # r drawn indices
    scales: np.ndarray          # r rescaling values
    probabilities: np.ndarray   # n, the distribution that was sampled
    source_dimension: int

    @property
    def r(self) -> int:
        return self.indices.shape[0]

    def sample_columns(self, X: np.ndarray) -> np.ndarray:
        """ X @ Omega @ D for a dense X with n columns. """
        return X[:, self.indices] * self.scales

    def sample_rows(self, X: np.ndarray) -> np.ndarray:
        """ (Omega @ D)^T @ X for a dense X with n rows. """
        return X[self.indices] * self.scales[:, np.newaxis]


@dataclass(frozen=True)
class WeightedSelection():
    """ Output of dual-set sparsification.

    Every greedy step adds weight to one index, which gives an n x r sampling matrix S with exactly one nonzero per
    column: column tau holds sqrt(step_weights[tau]) at row step_indices[tau]. Summing per index gives the weight
    vector s, with S @ S^T = diag(s).
    """
    step_indices: np.ndarray    # r
    step_weights: np.ndarray    # r, already rescaled
    source_dimension: int

    @property
    def r(self) -> int:
        return self.step_indices.shape[0]

    @property
    def weights(self) -> np.ndarray:
        return np.bincount(self.step_indices, weights=self.step_weights, minlength=self.source_dimension)

    @property
    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.weights))

    @property
    def column_scales(self) -> np.ndarray:
        return np.sqrt(self.step_weights)

    def sampling_matrix(self) -> np.ndarray:
        s = np.zeros((self.source_dimension, self.r))
        s[self.step_indices, np.arange(self.r)] = self.column_scales
        return s

    def sample_columns(self, X: np.ndarray) -> np.ndarray:
        """ X @ S for a dense X with n columns. """
        return X[:, self.step_indices] * self.column_scales
