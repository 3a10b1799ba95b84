# Python
from dataclasses import dataclass

# 3rd Party
import numpy as np
import scipy.linalg

# 1st Party
from .errors import ConditioningError


@dataclass(frozen=True)
class SubspaceFactor():
    """ The triple (Y, Psi, Delta) describing the best rank-k approximation of A within span(V).

    V = Y @ Psi with Y orthonormal, and Y @ Delta spans the optimal rank-k subspace. For full column rank V, Psi is the
    c x c upper triangular qr factor. For rank-deficient V, Y spans exactly range(V) (rho columns) and Psi is rho x c
    with full row rank; 'full_rank' is then False and Psi^{-1} generalizes to Psi^+.
    """
    y: np.ndarray
    psi: np.ndarray
    delta: np.ndarray
    full_rank: bool = True

    @property
    def k(self) -> int:
        return self.delta.shape[1]

    @property
    def basis(self) -> np.ndarray:
        """ Y @ Delta, the orthonormal m x k basis of the optimal subspace. """
        return self.y @ self.delta

    def invert_psi(self) -> np.ndarray:
        if not self.full_rank:
            raise ConditioningError("Psi is singular: V is numerically rank-deficient")

        return scipy.linalg.solve_triangular(self.psi, np.eye(self.psi.shape[0]))

    def apply_psi_inverse(self, X: np.ndarray) -> np.ndarray:
        """ Psi^{-1} @ X, or the minimum-norm Psi^+ @ X when V is rank-deficient. """
        if self.full_rank:
            return scipy.linalg.solve_triangular(self.psi, X)

        solution, _, _, _ = scipy.linalg.lstsq(self.psi, X)
        return solution

    def project(self, A) -> np.ndarray:
        """ Y Delta Delta^T Y^T A, i.e. the rank-k approximation this factor stands for. """
        basis = self.basis
        return basis @ np.asarray((A.T @ basis).T)
