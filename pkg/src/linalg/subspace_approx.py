# Python
import logging

# 3rd Party
import numpy as np
import scipy.linalg

# 1st Party
from .dataclasses_and_types import SubspaceFactor
from .dataclasses_and_types import CurArgumentError
from . import matrix_core
from . import sketch


def _orthonormal_factor(V: np.ndarray):
    """ V = Y Psi with Y orthonormal.

    Full column rank V takes the plain qr route (Psi upper triangular). Otherwise Y is trimmed to the numerical rank so
    it spans exactly range(V), and Psi = Y^T V has full row rank.
    """
    m, c = V.shape

    if m >= c:
        factorization = matrix_core.qr(V)
        sigma = scipy.linalg.svdvals(factorization.r)
        rank = matrix_core.numerical_rank_of_sigma(sigma, V.shape)
        if rank == c:
            return factorization.q, factorization.r, True

        u, s, vt = np.linalg.svd(factorization.r)
        y = factorization.q @ u[:, :rank]
        psi = s[:rank, np.newaxis] * vt[:rank]
    else:
        full = matrix_core.svd(V)
        rank = full.rank
        y = full.left
        psi = full.sigma[:, np.newaxis] * full.right.T

    logging.debug(f"Column set of width {c} has numerical rank {rank}, using its range basis")
    return y, psi, False


def _validate(A, V, k: int):
    if k < 1:
        raise CurArgumentError(f"k must be at least 1, got {k}")
    if V.shape[0] != A.shape[0]:
        raise CurArgumentError(f"V has {V.shape[0]} rows, A has {A.shape[0]}")


def best_subspace_svd(A: matrix_core.Matrix, V: np.ndarray, k: int) -> SubspaceFactor:
    """ Best rank-k approximation of A inside span(V).

    Y Delta Delta^T Y^T A equals the optimal Pi_{V,k}(A), with Delta the top-k left singular vectors of Y^T A.
    """
    _validate(A, V, k)

    y, psi, full_rank = _orthonormal_factor(V)
    coordinates = matrix_core.transpose_product(A, y)           # n x rho, = (Y^T A)^T
    width = min(k, y.shape[1])
    delta = matrix_core.top_right_singular_vectors(coordinates, width)

    return SubspaceFactor(y=y, psi=psi, delta=delta, full_rank=full_rank)


def approx_subspace_svd(A: matrix_core.Matrix, V: np.ndarray, k: int, epsilon: float, rng: np.random.Generator,
                        xi_constant: float = 40.0) -> SubspaceFactor:
    """ best_subspace_svd computed on Y^T A W^T, W a sparse embedding of the column dimension.

    xi = ceil(40 c^2 / epsilon^2). A W^T is taken in one pass over nnz(A) and only its occupied buckets are kept, so
    the dense work is at most c x min(xi, n).
    """
    _validate(A, V, k)
    if not 0.0 < epsilon <= 1.0:
        raise CurArgumentError(f"epsilon must lie in (0, 1], got {epsilon}")

    y, psi, full_rank = _orthonormal_factor(V)

    xi = sketch.subspace_embedding_dimension(V.shape[1], epsilon, xi_constant)
    embedding = sketch.make_sse(A.shape[1], xi, rng)
    sketched_transpose, occupied = sketch.apply_sse_compact(embedding, A.T)     # xi' x m

    coordinates = np.asarray(sketched_transpose @ y)                            # (Y^T A W^T)^T
    width = min(k, y.shape[1])
    delta = matrix_core.top_right_singular_vectors(coordinates, width)

    logging.debug(f"approx_subspace_svd: xi = {xi}, {occupied.shape[0]} occupied buckets")

    return SubspaceFactor(y=y, psi=psi, delta=delta, full_rank=full_rank)


def column_space_rank_k_residual_sq(A: matrix_core.Matrix, C: np.ndarray, k: int) -> float:
    """ ||A - Pi_{C,k}(A)||_F^2 """
    basis = best_subspace_svd(A, C, k).basis
    coefficients = matrix_core.transpose_product(A, basis).T

    if matrix_core.is_sparse(A):
        return max(matrix_core.frobenius_sq(A) - matrix_core.frobenius_sq(coefficients), 0.0)

    return matrix_core.frobenius_sq(A - basis @ coefficients)


def rank_constrained_u(A: matrix_core.Matrix, C: np.ndarray, R: np.ndarray, k: int) -> np.ndarray:
    """ The rank-k U minimizing ||A - C U R||_F, of minimum Frobenius norm among minimizers:

        U = C^+ (U_C U_C^T A V_R V_R^T)_k R^+
    """
    if k < 1 or k > min(C.shape[1], R.shape[0]):
        raise CurArgumentError(f"k must lie in [1, min(c, r)] = [1, {min(C.shape[1], R.shape[0])}], got {k}")

    column_basis = matrix_core.orthonormal_basis(C)
    row_basis = matrix_core.orthonormal_basis(R.T)

    core = column_basis.T @ np.asarray(A @ row_basis)
    core_k = matrix_core.truncate(matrix_core.svd(core), k)

    return matrix_core.pinv(C) @ column_basis @ core_k @ row_basis.T @ matrix_core.pinv(R)
