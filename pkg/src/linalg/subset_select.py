# Python
import math
import logging
from typing import Optional

# 3rd Party
import numpy as np

# 1st Party
from .dataclasses_and_types import SamplingPair, WeightedSelection
from .dataclasses_and_types import CurArgumentError, InvariantViolationError
from . import matrix_core
from . import sketch


def leverage_sample_size(k: int, factor: float) -> int:
    """ ceil(factor * k * ln(20 k)): 16 for the column stage, 8 for the row stage. """
    return int(math.ceil(factor * k * math.log(20 * k)))


def rand_sampling(X: np.ndarray, r: int, beta: float, rng: np.random.Generator,
                  probabilities: Optional[np.ndarray] = None) -> SamplingPair:
    """ Random sampling with replacement of r rows of X.

    With beta = 1 the rows are drawn with p_i = ||x_i||^2 / ||X||_F^2. For beta < 1 a caller-supplied distribution is
    accepted as long as it stays above the beta floor.

    Args:
        X: n x k matrix whose squared row norms define the distribution.
        r: number of i.i.d. draws, 1 <= r <= n.
        beta: floor factor in (0, 1].
        rng: source of randomness.
        probabilities: optional distribution to sample from instead of the row norms.

    Returns:
        The drawn indices together with the rescaling 1 / sqrt(p_i r).
    """
    n = X.shape[0]
    if not 1 <= r <= n:
        raise CurArgumentError(f"sample count must lie in [1, {n}], got {r}")
    if not 0.0 < beta <= 1.0:
        raise CurArgumentError(f"beta must lie in (0, 1], got {beta}")

    energies = matrix_core.row_norms_sq(X)
    total = float(energies.sum())
    if total == 0.0:
        raise CurArgumentError("cannot sample from an all-zero matrix")

    exact = energies / total

    if probabilities is None:
        p = exact
    else:
        p = np.asarray(probabilities, dtype=np.float64)
        if p.shape != (n,) or np.any(p < 0) or not math.isclose(p.sum(), 1.0, rel_tol=1e-9):
            raise CurArgumentError("supplied probabilities must be a distribution over the rows of X")
        if np.any(p < beta * exact - 1e-12):
            raise CurArgumentError(f"supplied probabilities fall below the beta = {beta} floor")

    indices = rng.choice(n, size=r, p=p / p.sum())
    scales = 1.0 / np.sqrt(p[indices] * r)

    return SamplingPair(indices=indices, scales=scales, probabilities=p, source_dimension=n)


def _check_dual_set_inputs(V: np.ndarray, row_count: int, r: int):
    n, k = V.shape
    if row_count != n:
        raise CurArgumentError(f"V has {n} rows but the second set has {row_count}")
    if r <= k:
        raise CurArgumentError(f"dual-set sparsification needs r > k, got r = {r}, k = {k}")
    if r > n:
        raise CurArgumentError(f"dual-set sparsification needs r <= n, got r = {r}, n = {n}")
    if not np.allclose(V.T @ V, np.eye(k), atol=1e-8):
        raise CurArgumentError("the rows of V must decompose the identity (V^T V = I)")


def _dual_set_sparsification(V: np.ndarray, energies: np.ndarray, r: int) -> WeightedSelection:
    """ Greedy barrier construction over the rows v_i of V and the squared norms ||a_i||^2 of the second set.

    The lower barrier moves by one per step, the upper score is the plain energy ratio. At every step the lowest index
    whose upper score does not exceed its lower score is chosen.
    """
    n, k = V.shape

    shrink = 1.0 - math.sqrt(k / r)
    total = float(energies.sum())
    upper_scores = energies * (shrink / total) if total > 0.0 else np.zeros(n)

    gram = np.zeros((k, k))
    step_indices = np.empty(r, dtype=np.int64)
    step_weights = np.empty(r)
    barrier_offset = math.sqrt(r * k)

    for step in range(r):
        lower = step - barrier_offset
        eigenvalues, eigenvectors = np.linalg.eigh(gram)

        gaps = eigenvalues - lower
        shifted_gaps = gaps - 1.0
        if np.any(shifted_gaps <= 0.0):
            raise InvariantViolationError(f"lower barrier crossed at step {step}")

        potential_increase = np.sum(1.0 / shifted_gaps) - np.sum(1.0 / gaps)

        projections = (V @ eigenvectors) ** 2
        lower_scores = (projections @ shifted_gaps ** -2) / potential_increase - projections @ (1.0 / shifted_gaps)

        admissible = (upper_scores <= lower_scores) & (lower_scores > 0.0)
        if not admissible.any():
            raise InvariantViolationError(f"no admissible index at step {step}")

        index = int(np.argmax(admissible))
        weight = 2.0 / (upper_scores[index] + lower_scores[index])

        step_indices[step] = index
        step_weights[step] = weight
        gram += weight * np.outer(V[index], V[index])

    step_weights *= shrink / r

    return WeightedSelection(step_indices=step_indices, step_weights=step_weights, source_dimension=n)


def bss_sampling(V: np.ndarray, A: matrix_core.Matrix, r: int) -> WeightedSelection:
    """ Deterministic dual-set spectral-Frobenius sparsification.

    Guarantees sigma_k(V^T S) >= 1 - sqrt(k / r) and ||A^T S||_F^2 <= ||A^T||_F^2.

    Args:
        V: n x k with V^T V = I_k.
        A: n x l, only its squared row norms matter.
        r: number of greedy steps, k < r <= n.
    """
    _check_dual_set_inputs(V, A.shape[0], r)
    return _dual_set_sparsification(V, matrix_core.row_norms_sq(A), r)


def bss_sampling_sparse(V: np.ndarray, A: matrix_core.Matrix, r: int, epsilon: float, rng: np.random.Generator,
                        xi_constant: float = 40.0) -> WeightedSelection:
    """ bss_sampling run on A W^T, with W a sparse embedding of the l-dimension.

    The spectral guarantee carries over unchanged. The Frobenius side picks up a (1 + epsilon) / (1 - epsilon) factor
    with constant probability.
    """
    _check_dual_set_inputs(V, A.shape[0], r)
    if not 0.0 < epsilon < 1.0:
        raise CurArgumentError(f"epsilon must lie in (0, 1), got {epsilon}")

    xi = sketch.subspace_embedding_dimension(V.shape[0], epsilon, xi_constant)
    embedding = sketch.make_sse(A.shape[1], xi, rng)
    sketched_transpose, occupied = sketch.apply_sse_compact(embedding, A.T)

    logging.debug(f"bss_sampling_sparse: xi = {xi}, {occupied.shape[0]} occupied buckets")

    return _dual_set_sparsification(V, matrix_core.column_norms_sq(sketched_transpose), r)
