# Python
import math
import logging
from typing import Optional

# 3rd Party
import numpy as np

# 1st Party
from .dataclasses_and_types import ResidualDistribution, AdaptiveSelection, DiscreteDistribution
from .dataclasses_and_types import SvdFactorization
from .dataclasses_and_types import CurArgumentError
from .pairwise_hash_family import PairwiseHashFamily
from . import matrix_core
from . import sketch


# Residual energy below this fraction of ||A||_F^2 is treated as exactly zero.
ZERO_RESIDUAL_RATIO = 1e-24

# Floor guaranteed by a JLT-sketched residual: (1/2) / (3/2).
SKETCHED_FLOOR = 1.0 / 3.0


def _distribution_from_energies(energies: np.ndarray, reference_sq: float, floor: float = 1.0) -> ResidualDistribution:
    total = float(energies.sum())
    size = energies.shape[0]

    if total <= ZERO_RESIDUAL_RATIO * reference_sq or total <= 0.0:
        logging.debug("Residual is numerically zero, sampling uniformly")
        return ResidualDistribution(probabilities=np.full(size, 1.0 / size), floor=floor, uniform_fallback=True)

    return ResidualDistribution(probabilities=energies / total, floor=floor)


def _validate_supplied(probabilities: np.ndarray, exact: ResidualDistribution, floor: float) -> ResidualDistribution:
    p = np.asarray(probabilities, dtype=np.float64)
    if p.shape != exact.probabilities.shape or np.any(p < 0) or not math.isclose(p.sum(), 1.0, rel_tol=1e-9):
        raise CurArgumentError("supplied probabilities must be a distribution over the residual's columns")
    if not exact.uniform_fallback and np.any(p < floor * exact.probabilities - 1e-12):
        raise CurArgumentError(f"supplied probabilities fall below the alpha = {floor} floor")
    return ResidualDistribution(probabilities=p, floor=floor, uniform_fallback=exact.uniform_fallback)


def _draw(distribution: ResidualDistribution, count: int, rng: np.random.Generator) -> np.ndarray:
    p = distribution.probabilities
    return rng.choice(p.shape[0], size=count, p=p / p.sum())


def column_residual_energies(A: matrix_core.Matrix, V: np.ndarray) -> np.ndarray:
    """ Squared column norms of B = A - V V^+ A. """
    basis = matrix_core.orthonormal_basis(V)
    coefficients = matrix_core.transpose_product(A, basis).T

    if matrix_core.is_sparse(A):
        return np.maximum(matrix_core.column_norms_sq(A) - matrix_core.column_norms_sq(coefficients), 0.0)

    return matrix_core.column_norms_sq(A - basis @ coefficients)


def row_residual_energies(A: matrix_core.Matrix, R1: np.ndarray) -> np.ndarray:
    """ Squared row norms of B = A - A R1^+ R1. """
    basis = matrix_core.orthonormal_basis(R1.T)
    coordinates = np.asarray(A @ basis)

    if matrix_core.is_sparse(A):
        return np.maximum(matrix_core.row_norms_sq(A) - matrix_core.row_norms_sq(coordinates), 0.0)

    return matrix_core.row_norms_sq(A - coordinates @ basis.T)


def adaptive_cols(A: matrix_core.Matrix, V: np.ndarray, alpha: float, c2: int, rng: np.random.Generator,
                  probabilities: Optional[np.ndarray] = None) -> AdaptiveSelection:
    """ Draws c2 columns i.i.d. proportional to the squared column norms of A - V V^+ A.

    Args:
        A: m x n input.
        V: m x c1, the columns chosen so far.
        alpha: floor factor of the distribution, in (0, 1].
        c2: number of draws.
        rng: source of randomness.
        probabilities: optional distribution to use in place of the exact residual norms, checked against alpha.
    """
    if not 0.0 < alpha <= 1.0:
        raise CurArgumentError(f"alpha must lie in (0, 1], got {alpha}")
    if c2 < 1:
        raise CurArgumentError(f"c2 must be at least 1, got {c2}")

    exact = _distribution_from_energies(column_residual_energies(A, V), matrix_core.frobenius_sq(A), alpha)
    distribution = exact if probabilities is None else _validate_supplied(probabilities, exact, alpha)

    return AdaptiveSelection(indices=_draw(distribution, c2, rng), distribution=distribution)


def adaptive_rows(A: matrix_core.Matrix, V: np.ndarray, R1: np.ndarray, r2: int,
                  rng: np.random.Generator) -> AdaptiveSelection:
    """ Draws r2 rows i.i.d. proportional to the squared row norms of A - A R1^+ R1.

    V does not enter the distribution. It only names the column space the resulting bound is stated for.
    """
    if r2 < 1:
        raise CurArgumentError(f"r2 must be at least 1, got {r2}")
    if V.shape[0] != A.shape[0]:
        raise CurArgumentError(f"V has {V.shape[0]} rows, A has {A.shape[0]}")

    distribution = _distribution_from_energies(row_residual_energies(A, R1), matrix_core.frobenius_sq(A))

    return AdaptiveSelection(indices=_draw(distribution, r2, rng), distribution=distribution)


def adaptive_cols_sparse(A: matrix_core.Matrix, V: np.ndarray, c2: int, rng: np.random.Generator,
                         beta: float = 1.0) -> AdaptiveSelection:
    """ adaptive_cols with column norms estimated from S (A - V V^+ A), S a sign sketch.

    The residual is never formed: the sketch is computed as S A - (S V)(V^+ A).
    """
    if c2 < 1:
        raise CurArgumentError(f"c2 must be at least 1, got {c2}")
    m, n = A.shape

    signs = sketch.make_sign_sketch(sketch.jlt_dimension(max(n, 2), beta), m, rng).entries
    coefficients = matrix_core.transpose_product(A, matrix_core.pinv(V).T).T       # c1 x n
    sketched_a = matrix_core.transpose_product(A, signs.T).T                        # s x n
    sketched_residual = sketched_a - (signs @ V) @ coefficients

    distribution = _distribution_from_energies(
        matrix_core.column_norms_sq(sketched_residual), matrix_core.frobenius_sq(sketched_a), SKETCHED_FLOOR
    )

    return AdaptiveSelection(indices=_draw(distribution, c2, rng), distribution=distribution)


def adaptive_rows_sparse(A: matrix_core.Matrix, V: np.ndarray, R1: np.ndarray, r2: int, rng: np.random.Generator,
                         beta: float = 1.0) -> AdaptiveSelection:
    """ adaptive_rows with row norms estimated from (A - A R1^+ R1) S^T.

    Right multiplication keeps the row norms, which are what gets sampled. Computed as A S^T - (A R1^+)(R1 S^T).
    """
    if r2 < 1:
        raise CurArgumentError(f"r2 must be at least 1, got {r2}")
    m, n = A.shape

    signs = sketch.make_sign_sketch(sketch.jlt_dimension(max(m, 2), beta), n, rng).entries
    sketched_a = np.asarray(A @ signs.T)                                            # m x s
    row_coordinates = np.asarray(A @ matrix_core.pinv(R1))                          # m x r1
    sketched_residual = sketched_a - row_coordinates @ (R1 @ signs.T)

    distribution = _distribution_from_energies(
        matrix_core.row_norms_sq(sketched_residual), matrix_core.frobenius_sq(sketched_a), SKETCHED_FLOOR
    )

    return AdaptiveSelection(indices=_draw(distribution, r2, rng), distribution=distribution)


def discretize_distribution(p: np.ndarray) -> DiscreteDistribution:
    """ Rounds p onto the grid of multiples of 1/(4n).

    Every index except the heaviest one, i*, gets half its mass rounded up to the grid. i* takes whatever is left,
    which is at least 1/4. Afterwards q_i >= p_i / 4 for every i.
    """
    p = np.asarray(p, dtype=np.float64)
    n = p.shape[0]
    grid = 4 * n
    i_star = int(np.argmax(p))

    # 2n p_i is r_i = p_i / 2 measured in grid units. The small shrink stops rounding noise on exact multiples from
    # adding a unit, while any positive mass still earns one.
    units = np.ceil(2.0 * n * p * (1.0 - 1e-12)).astype(np.int64)
    units[i_star] = 0
    units[i_star] = grid - int(units.sum())

    return DiscreteDistribution(units=units, grid=grid, i_star=i_star)


def adaptive_rows_objective(A: matrix_core.Matrix, V: np.ndarray, R: np.ndarray) -> float:
    """ ||A - V V^+ A R^+ R||_F^2 """
    dense = matrix_core.to_dense(A, label="adaptive objective")
    column_basis = matrix_core.orthonormal_basis(V)
    projected = column_basis @ (column_basis.T @ dense)
    return _projected_objective(dense, projected, R)


def _projected_objective(A: np.ndarray, projected: np.ndarray, R: np.ndarray) -> float:
    row_basis = matrix_core.orthonormal_basis(R.T)
    return matrix_core.frobenius_sq(A - (projected @ row_basis) @ row_basis.T)


def adaptive_rows_d(A: matrix_core.Matrix, V: np.ndarray, R1: np.ndarray, r2: int) -> np.ndarray:
    """ Derandomized adaptive row sampling.

    The exact residual distribution is discretized, every member of a pairwise independent hash family over the grid
    is turned into r2 rows through the inverse CDF, and the candidate set with the smallest true objective
    ||A - V V^+ A R^+ R||^2 wins. Ties go to the lowest family index.

    Guarantees ||A - V V^+ A R^+ R||^2 <= ||A - V V^+ A||^2 + (4 rho / r2) ||A - A R1^+ R1||^2 with no probability
    involved, at O(m^2) objective evaluations.
    """
    if r2 < 1:
        raise CurArgumentError(f"r2 must be at least 1, got {r2}")

    dense = matrix_core.to_dense(A, label="derandomized sampling")
    m = dense.shape[0]

    distribution = _distribution_from_energies(row_residual_energies(dense, R1), matrix_core.frobenius_sq(dense))
    if distribution.uniform_fallback:
        return np.arange(r2) % m

    discrete = discretize_distribution(distribution.probabilities)
    family = PairwiseHashFamily.for_range(discrete.grid, domain_size=r2)
    trials = np.arange(1, r2 + 1)

    column_basis = matrix_core.orthonormal_basis(V)
    projected = column_basis @ (column_basis.T @ dense)

    evaluated: set[bytes] = set()
    best_rows = None
    best_value = math.inf

    for a in range(family.prime):
        candidates = discrete.inverse_cdf(family.evaluate_block(a, trials))

        for rows in candidates:
            key = np.sort(rows).tobytes()
            if key in evaluated:
                continue
            evaluated.add(key)

            value = _projected_objective(dense, projected, np.vstack([R1, dense[rows]]))
            if value < best_value:
                best_value = value
                best_rows = rows

    logging.debug(f"adaptive_rows_d: {len(evaluated)} distinct candidates out of {family.size}, best {best_value:.6g}")

    return np.asarray(best_rows, dtype=np.int64)


def adaptive_cols_d(A: matrix_core.Matrix, V: np.ndarray, c2: int, k: int,
                    factorization: Optional[SvdFactorization] = None) -> np.ndarray:
    """ Derandomized adaptive column sampling, run as adaptive_rows_d(A^T, A_k^T, V^T, c2).

    Args:
        A: m x n input.
        V: m x c1 columns of A chosen so far.
        c2: number of columns to add.
        k: target rank.
        factorization: exact SVD of A, when the caller already has it.
    """
    dense = matrix_core.to_dense(A, label="derandomized sampling")
    if factorization is None:
        factorization = matrix_core.svd(dense)

    best_rank_k = matrix_core.truncate(factorization, k)
    return adaptive_rows_d(dense.T, best_rank_k.T, V.T, c2)
