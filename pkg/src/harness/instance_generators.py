# Python
import logging
from typing import Callable

# 3rd Party
import numpy as np
import scipy.sparse as sps

# 1st Party
from ..linalg import matrix_core
from ..linalg.dataclasses_and_types import CurArgumentError
from ..cur_processing_config import InstanceKind, InstanceGeneratorSpec
from .adversarial import gen_adversarial


def _check_shape(m: int, n: int, rank: int):
    if m < 1 or n < 1:
        raise CurArgumentError(f"shape must be positive, got {m} x {n}")
    if not 1 <= rank <= min(m, n):
        raise CurArgumentError(f"rank must lie in [1, {min(m, n)}], got {rank}")


def exact_rank(m: int, n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """ Gaussian factors of inner dimension 'rank', so rank(A) = rank with probability one. """
    _check_shape(m, n, rank)
    return rng.standard_normal((m, rank)) @ rng.standard_normal((rank, n))


def low_rank_plus_noise(m: int, n: int, rank: int, noise: float, rng: np.random.Generator) -> np.ndarray:
    """ exact_rank(m, n, rank) plus i.i.d. Gaussian noise of standard deviation 'noise'. """
    return exact_rank(m, n, rank, rng) + noise * rng.standard_normal((m, n))


def sparse_random(m: int, n: int, density: float, rng: np.random.Generator) -> sps.csr_array:
    """ Uniformly placed Gaussian entries at the given fill. """
    if not 0.0 < density <= 1.0:
        raise CurArgumentError(f"density must lie in (0, 1], got {density}")
    matrix = sps.random(m, n, density=density, format="csr", random_state=rng, data_rvs=rng.standard_normal)
    return matrix_core.as_operand(sps.csr_array(matrix))


def _sparse_factor(rows: int, cols: int, density: float, rng: np.random.Generator) -> sps.csr_array:
    # One guaranteed entry per column keeps every factor column nonzero
    anchor = sps.csr_array(
        (rng.standard_normal(cols), (rng.integers(0, rows, size=cols), np.arange(cols))), shape=(rows, cols)
    )
    return sparse_random(rows, cols, density, rng) + anchor


def sparse_exact_rank(m: int, n: int, rank: int, density: float, rng: np.random.Generator) -> sps.csr_array:
    """ Product of sparse m x rank and rank x n factors, so rank(A) <= rank (equality generically). """
    _check_shape(m, n, rank)
    left = _sparse_factor(m, rank, density, rng)
    right = _sparse_factor(n, rank, density, rng).T
    return matrix_core.as_operand(sps.csr_array(left @ right))


_GENERATORS: dict[InstanceKind, Callable[[InstanceGeneratorSpec, np.random.Generator], matrix_core.Matrix]] = {
    InstanceKind.LowRankPlusNoise: lambda spec, rng: low_rank_plus_noise(spec.m, spec.n, spec.rank, spec.noise, rng),
    InstanceKind.ExactRank: lambda spec, rng: exact_rank(spec.m, spec.n, spec.rank, rng),
    InstanceKind.SparseRandom: lambda spec, rng: sparse_random(spec.m, spec.n, spec.density, rng),
    InstanceKind.SparseExactRank: lambda spec, rng: sparse_exact_rank(spec.m, spec.n, spec.rank, spec.density, rng),
    InstanceKind.Adversarial: lambda spec, rng: gen_adversarial(spec.block_width, spec.rank, spec.alpha).matrix,
}


def make_instance(spec: InstanceGeneratorSpec) -> matrix_core.Matrix:
    rng = np.random.default_rng(spec.seed)
    matrix = _GENERATORS[spec.kind](spec, rng)
    logging.debug(f"Generated {spec.kind.name} instance of shape {matrix.shape}")
    return matrix
