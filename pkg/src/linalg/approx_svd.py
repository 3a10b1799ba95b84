# Python
import math
import logging

# 3rd Party
import numpy as np

# 1st Party
from .dataclasses_and_types import FactorZ, SvdMode
from .dataclasses_and_types import CurArgumentError
from . import matrix_core
from . import sketch


""" Approximate SVD factors

Each producer returns an orthonormal n x k matrix Z with ||A - A Z Z^T||_F^2 <= (1 + epsilon) ||A - A_k||_F^2 under its
own contract: always (deterministic), in expectation (randomized) or with constant probability (sparse).

k equal to the rank of A is accepted, the residual is then zero. Only k above the numerical rank is rejected.
"""


def _validate(k: int, epsilon: float, minimum_k: int = 1):
    if k < minimum_k:
        raise CurArgumentError(f"rank parameter must be at least {minimum_k}, got {k}")
    if not 0.0 < epsilon <= 1.0:
        raise CurArgumentError(f"epsilon must lie in (0, 1], got {epsilon}")


def deterministic_svd(A: matrix_core.Matrix, k: int, epsilon: float) -> FactorZ:
    """ Z = V_k from the exact SVD. Deterministic, and meets the contract with epsilon = 0. """
    _validate(k, epsilon)

    factorization = matrix_core.svd(A)
    if k > factorization.rank:
        raise CurArgumentError(f"k = {k} exceeds the numerical rank {factorization.rank} of A")

    logging.debug("deterministic_svd: exact truncated SVD")
    return FactorZ(z=factorization.right[:, :k].copy(), mode=SvdMode.Deterministic, epsilon=epsilon)


def randomized_svd(A: matrix_core.Matrix, k: int, epsilon: float, rng: np.random.Generator) -> FactorZ:
    """ Sketch-and-project.

    A random sign sketch of width p = k + ceil(k / epsilon) captures the range of A, A is projected onto it and Z is
    read off the top-k right singular directions of the projection.
    """
    _validate(k, epsilon, minimum_k=2)
    m, n = A.shape

    width = min(k + int(math.ceil(k / epsilon)), n)
    signs = sketch.make_sign_sketch(width, n, rng).entries

    sampled_range = np.asarray(A @ signs.T)                 # m x p
    basis = matrix_core.orthonormal_basis(sampled_range)
    if basis.shape[1] < k:
        raise CurArgumentError(f"k = {k} exceeds the numerical rank {basis.shape[1]} of A")

    projected = matrix_core.transpose_product(A, basis).T   # rho x n
    z = matrix_core.top_right_singular_vectors(projected, k)

    return FactorZ(z=z, mode=SvdMode.Randomized, epsilon=epsilon)


def sparse_svd(A: matrix_core.Matrix, k: int, epsilon: float, rng: np.random.Generator,
               xi_constant: float = 40.0) -> FactorZ:
    """ Z = top-k right singular vectors of W A, with W a sparse embedding of xi = ceil(40 (k^2 + k) / epsilon^2).

    W A costs one pass over nnz(A), everything after it works on the xi x n sketch.
    """
    _validate(k, epsilon, minimum_k=2)
    m, n = A.shape

    xi = int(math.ceil(xi_constant * (k * k + k) / (epsilon * epsilon)))
    embedding = sketch.make_sse(m, xi, rng)
    sketched, occupied = sketch.apply_sse_compact(embedding, A)

    logging.debug(f"sparse_svd: xi = {xi}, {occupied.shape[0]} occupied buckets")

    if min(sketched.shape) < k:
        raise CurArgumentError(f"k = {k} exceeds the dimensions {sketched.shape} of the sketch")

    sigma, z = matrix_core.top_right_singular_pairs(sketched, k, rng)
    if z.shape[1] < k or sigma[k - 1] <= matrix_core.rank_tolerance(sketched.shape, sigma[0]):
        raise CurArgumentError(f"k = {k} exceeds the numerical rank of A")

    return FactorZ(z=z, mode=SvdMode.Sparse, epsilon=epsilon)
