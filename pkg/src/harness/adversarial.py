# Python
import math
import logging
from dataclasses import dataclass

# 3rd Party
import numpy as np
import scipy.sparse as sps

# 1st Party
from ..linalg import matrix_core
from ..linalg import subspace_approx
from ..linalg.dataclasses_and_types import CurArgumentError


DEFAULT_ALPHA = 1e-10


@dataclass(frozen=True)
class AdversarialInstance():
    """ Block-diagonal matrix on which no small set of columns (or rows) gives a good rank-k CUR.

    D is (n+1) x n with columns e_1 + (alpha / sqrt(k)) e_{i+1}, B stacks k copies of D on its diagonal and
    A = diag(B, B^T) is t x t with t = (2n + 1) k.

    The squared singular values of A are n + alpha^2/k (2k times), alpha^2/k (2k(n-1) times) and zero (k times).
    """
    n: int
    k: int
    alpha: float
    matrix: sps.csr_array

    @property
    def t(self) -> int:
        return (2 * self.n + 1) * self.k

    @property
    def ell(self) -> int:
        return self.n * self.k

    @property
    def opt_sq(self) -> float:
        """ Closed form l (1 + 2 alpha^2 / k) of the rank-k optimum used in the lower-bound argument. """
        return self.ell * (1.0 + 2.0 * self.alpha ** 2 / self.k)

    def expected_singular_values_sq(self) -> np.ndarray:
        top = np.full(2 * self.k, self.n + self.alpha ** 2 / self.k)
        tail = np.full(2 * self.k * (self.n - 1), self.alpha ** 2 / self.k)
        return np.concatenate([top, tail, np.zeros(self.k)])


def _block_d(n: int, k: int, alpha: float) -> sps.csr_array:
    rows = np.concatenate([np.zeros(n, dtype=np.int64), np.arange(1, n + 1)])
    cols = np.concatenate([np.arange(n), np.arange(n)])
    values = np.concatenate([np.ones(n), np.full(n, alpha / math.sqrt(k))])
    return sps.csr_array((values, (rows, cols)), shape=(n + 1, n))


def gen_adversarial(n: int, k: int, alpha: float = DEFAULT_ALPHA) -> AdversarialInstance:
    """ Builds the lower-bound instance for block width n, rank parameter k and perturbation alpha.

    Raises:
        CurArgumentError: n <= 1, k < 1 or alpha <= 0.
    """
    if n <= 1:
        raise CurArgumentError(f"block width n must exceed 1, got {n}")
    if k < 1:
        raise CurArgumentError(f"k must be at least 1, got {k}")
    if not alpha > 0.0:
        raise CurArgumentError(f"alpha must be positive, got {alpha}")

    d = _block_d(n, k, alpha)
    b = sps.block_diag([d] * k, format="csr")
    a = sps.block_diag([b, b.T], format="csr")

    logging.debug(f"Adversarial instance n = {n}, k = {k}, alpha = {alpha:g}: {a.shape[0]} x {a.shape[1]}, "
                  f"nnz = {a.nnz}")

    return AdversarialInstance(n=n, k=k, alpha=alpha, matrix=matrix_core.as_operand(sps.csr_array(a)))


def rank_deficient_u_ratio(instance: AdversarialInstance, rank: int) -> float:
    """ Error ratio of the best CUR with C = R = A whose U has the given rank, against the rank-k optimum.

    Every CUR with rank(U) = rank is a rank-'rank' matrix, so the ratio measures what dropping the rank of U below k
    costs even with all columns and rows available.
    """
    if not 1 <= rank <= instance.t:
        raise CurArgumentError(f"rank must lie in [1, {instance.t}], got {rank}")

    dense = matrix_core.to_dense(instance.matrix, label="adversarial instance")
    u = subspace_approx.rank_constrained_u(dense, dense, dense, rank)
    error_sq = matrix_core.frobenius_sq(dense - dense @ u @ dense)

    return error_sq / matrix_core.best_rank_k_error_sq(dense, instance.k)
