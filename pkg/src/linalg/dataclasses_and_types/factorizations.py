# Python
from dataclasses import dataclass

# 3rd Party
import numpy as np

# 1st Party


@dataclass(frozen=True)
class SvdFactorization():
    """ Thin SVD restricted to the numerical rank: A ~ left @ diag(sigma) @ right.T

    Columns beyond the numerical rank are dropped, so every stored singular value is positive.
    """
    left: np.ndarray    # m x rho
    sigma: np.ndarray   # rho, descending
    right: np.ndarray   # n x rho

    @property
    def rank(self) -> int:
        return self.sigma.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.left.shape[0], self.right.shape[0])

    def tail_energy(self, k: int) -> float:
        """ ||A - A_k||_F^2 as the sum of the squared singular values past position k. """
        return float(np.sum(self.sigma[k:] ** 2))


@dataclass(frozen=True)
class QrFactorization():
    q: np.ndarray       # m x c, orthonormal columns
    r: np.ndarray       # c x c, upper triangular
