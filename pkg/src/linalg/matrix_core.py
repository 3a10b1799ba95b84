# Python
from __future__ import annotations

import logging
from typing import Union, Optional

# 3rd Party
import numpy as np
import scipy.sparse as sps
import scipy.sparse.linalg

# 1st Party
from .dataclasses_and_types import SvdFactorization, QrFactorization
from .dataclasses_and_types import CurArgumentError, NumericalFailureError


""" Matrix operands

Dense matrices are C-ordered float64 numpy arrays, sparse matrices are canonical scipy CSR arrays (sorted indices, no
duplicates, no stored zeros). Both speak the same protocol: '@', row/column indexing and nnz, so algorithm code is
written once. Anything that turns a sparse operand into a dense array must go through to_dense(), which is what the
allocation audit watches.
"""

Matrix = Union[np.ndarray, sps.csr_array]

RANK_TOLERANCE_FACTOR = 2.0 ** -45


def is_sparse(A) -> bool:
    return sps.issparse(A)


def as_operand(A, name: str = "A") -> Matrix:
    """ Validates A and returns it in canonical dense or CSR form.

    Raises:
        CurArgumentError: A is not two-dimensional or holds non-finite entries.
    """
    if is_sparse(A):
        operand = sps.csr_array(A, dtype=np.float64, copy=True)
        operand.sum_duplicates()
        operand.eliminate_zeros()
        operand.sort_indices()
        entries = operand.data
    else:
        operand = np.ascontiguousarray(A, dtype=np.float64)
        if operand.ndim != 2:
            raise CurArgumentError(f"{name} must be two-dimensional, got shape {operand.shape}")
        entries = operand

    if not np.all(np.isfinite(entries)):
        raise CurArgumentError(f"{name} contains non-finite entries")

    return operand


def nnz(A: Matrix) -> int:
    if is_sparse(A):
        return int(A.nnz)
    return int(np.count_nonzero(A))


class DenseAllocationAudit():
    """ Records every densification routed through to_dense() while active.

    The audit watches one input shape (m, n). Any dense result holding at least m*n entries counts as a violation,
    i.e. a full-size materialization of the watched operand.

    Usage:
        with DenseAllocationAudit(A.shape) as audit:
            ...
        assert not audit.violations
    """

    _active: list[DenseAllocationAudit] = []

    def __init__(self, watched_shape: tuple[int, int]):
        self.watched_entries = int(watched_shape[0]) * int(watched_shape[1])
        self.records: list[tuple[str, tuple[int, ...]]] = []

    def __enter__(self):
        DenseAllocationAudit._active.append(self)
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        DenseAllocationAudit._active.remove(self)
        return False

    @property
    def violations(self) -> list[tuple[str, tuple[int, ...]]]:
        return [record for record in self.records if int(np.prod(record[1])) >= self.watched_entries]

    @classmethod
    def notify(cls, label: str, shape: tuple[int, ...]):
        for audit in cls._active:
            audit.records.append((label, tuple(shape)))


def to_dense(A: Matrix, label: str = "") -> np.ndarray:
    if is_sparse(A):
        DenseAllocationAudit.notify(label, A.shape)
        return A.toarray()
    return np.asarray(A)


def select_columns(A: Matrix, indices: np.ndarray) -> np.ndarray:
    if is_sparse(A):
        return to_dense(A[:, indices], label="selected columns")
    return A[:, indices]


def select_rows(A: Matrix, indices: np.ndarray) -> np.ndarray:
    if is_sparse(A):
        return to_dense(A[indices], label="selected rows")
    return A[indices]


def transpose_product(A: Matrix, X: np.ndarray) -> np.ndarray:
    """ A^T @ X as a dense array, for dense or sparse A. """
    return np.asarray(A.T @ X)


def frobenius_sq(A: Matrix) -> float:
    if is_sparse(A):
        return float(np.dot(A.data, A.data))
    return float(np.vdot(A, A))


def spectral_norm(A: Matrix) -> float:
    if min(A.shape) == 0 or nnz(A) == 0:
        return 0.0

    if is_sparse(A) and min(A.shape) > 1:
        try:
            sigma = scipy.sparse.linalg.svds(A, k=1, return_singular_vectors=False, v0=np.ones(min(A.shape)))
        except scipy.sparse.linalg.ArpackNoConvergence as error:
            raise NumericalFailureError("spectral norm: ARPACK did not converge") from error
        return float(sigma[0])

    return float(np.linalg.norm(to_dense(A, label="spectral norm"), 2))


def row_norms_sq(A: Matrix) -> np.ndarray:
    if is_sparse(A):
        return np.asarray(A.multiply(A).sum(axis=1)).ravel()
    return np.einsum("ij,ij->i", A, A)


def column_norms_sq(A: Matrix) -> np.ndarray:
    if is_sparse(A):
        return np.asarray(A.multiply(A).sum(axis=0)).ravel()
    return np.einsum("ij,ij->j", A, A)


def rank_tolerance(shape: tuple[int, ...], sigma_max: float) -> float:
    """ Singular values at or below this threshold count as zero. """
    return max(shape) * sigma_max * RANK_TOLERANCE_FACTOR


def numerical_rank_of_sigma(sigma: np.ndarray, shape: tuple[int, ...]) -> int:
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > rank_tolerance(shape, sigma[0])))


def svd(A: Matrix) -> SvdFactorization:
    """ Thin SVD truncated at the numerical rank.

    Raises:
        NumericalFailureError: LAPACK failed to converge.
    """
    dense = to_dense(A, label="svd")

    try:
        u, sigma, vt = np.linalg.svd(dense, full_matrices=False)
    except np.linalg.LinAlgError as error:
        raise NumericalFailureError(f"svd did not converge for a {dense.shape} matrix") from error

    rank = numerical_rank_of_sigma(sigma, dense.shape)

    return SvdFactorization(left=u[:, :rank], sigma=sigma[:rank], right=vt[:rank].T)


def numerical_rank(A: Matrix) -> int:
    return svd(A).rank


def truncate(factorization: SvdFactorization, k: int) -> np.ndarray:
    """ Best rank-k approximation A_k. Returns A itself (to rounding) once k reaches the rank. """
    if k < 1:
        raise CurArgumentError(f"truncate requires k >= 1, got {k}")

    kept = min(k, factorization.rank)
    return (factorization.left[:, :kept] * factorization.sigma[:kept]) @ factorization.right[:, :kept].T


def pinv(A: Matrix) -> np.ndarray:
    """ Moore-Penrose pseudo-inverse via the rank-truncated SVD. The zero matrix maps to the zero matrix. """
    factorization = svd(A)
    return (factorization.right / factorization.sigma) @ factorization.left.T


def qr(A: Matrix) -> QrFactorization:
    """ Reduced qr. Rank-deficient input is allowed, in which case R may be singular. """
    dense = to_dense(A, label="qr")
    m, c = dense.shape
    if m < c:
        raise CurArgumentError(f"qr requires at least as many rows as columns, got {dense.shape}")

    try:
        q, r = np.linalg.qr(dense, mode="reduced")
    except np.linalg.LinAlgError as error:
        raise NumericalFailureError(f"qr failed for a {dense.shape} matrix") from error

    return QrFactorization(q=q, r=r)


def orthonormal_basis(V: Matrix) -> np.ndarray:
    """ Orthonormal basis of range(V), sized by its numerical rank. """
    return svd(V).left


def projection_residual_sq(A: Matrix, V: Matrix) -> float:
    """ ||A - V V^+ A||_F^2.

    Dense A is projected explicitly. Sparse A uses ||A||^2 - ||Q^T A||^2 so that no m x n array appears.
    """
    basis = orthonormal_basis(V)
    coefficients = transpose_product(A, basis).T    # rho x n

    if is_sparse(A):
        return max(frobenius_sq(A) - frobenius_sq(coefficients), 0.0)

    return frobenius_sq(A - basis @ coefficients)


def best_rank_k_error_sq(A: Matrix, k: int) -> float:
    """ ||A - A_k||_F^2, the optimum every relative-error bound is measured against. """
    if is_sparse(A) and k < min(A.shape) - 1:
        total = frobenius_sq(A)
        tail = total - float(np.sum(top_singular_values(A, k) ** 2))
        # ||A||^2 - sum sigma^2 cancels to rounding noise when rank(A) <= k
        if tail <= rank_tolerance(A.shape, 1.0) * total:
            return 0.0
        return tail

    return svd(A).tail_energy(k)


def top_singular_values(A: Matrix, k: int) -> np.ndarray:
    try:
        sigma = scipy.sparse.linalg.svds(A, k=k, return_singular_vectors=False, v0=np.ones(min(A.shape)))
    except scipy.sparse.linalg.ArpackNoConvergence as error:
        raise NumericalFailureError("top singular values: ARPACK did not converge") from error
    return np.sort(sigma)[::-1]


def top_right_singular_pairs(X: Matrix, k: int, rng: Optional[np.random.Generator] = None):
    """ The k leading singular values of X (descending) and the matching n x k right singular vectors.

    Sparse X is handled with ARPACK (start vector drawn from 'rng', so results are reproducible per seed); dense X
    with LAPACK.
    """
    if is_sparse(X) and k < min(X.shape):
        start = rng.standard_normal(min(X.shape)) if rng is not None else np.ones(min(X.shape))
        try:
            _, sigma, vt = scipy.sparse.linalg.svds(X, k=k, v0=start, solver="arpack")
        except scipy.sparse.linalg.ArpackNoConvergence as error:
            raise NumericalFailureError("ARPACK did not converge") from error

        order = np.argsort(sigma)[::-1]
        return sigma[order], vt[order].T

    dense = to_dense(X, label="right singular vectors")
    try:
        _, sigma, vt = np.linalg.svd(dense, full_matrices=False)
    except np.linalg.LinAlgError as error:
        raise NumericalFailureError(f"svd did not converge for a {dense.shape} matrix") from error

    if vt.shape[0] < k:
        logging.debug(f"Only {vt.shape[0]} right singular vectors available, {k} requested")

    return sigma[:k], vt[:k].T


def top_right_singular_vectors(X: Matrix, k: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    return top_right_singular_pairs(X, k, rng)[1]
