# Python
import math

# 3rd Party
import numpy as np

# 1st Party
from .dataclasses_and_types import SparseEmbedding, SignSketch
from .dataclasses_and_types import CurArgumentError
from . import matrix_core


def subspace_embedding_dimension(rank: int, epsilon: float, constant: float = 40.0) -> int:
    """ xi = ceil(constant * rank^2 / epsilon^2), the size of an embedding for a rank-dimensional subspace. """
    return int(math.ceil(constant * rank * rank / (epsilon * epsilon)))


def make_sse(n: int, xi: int, rng: np.random.Generator) -> SparseEmbedding:
    if xi < 1:
        raise CurArgumentError(f"embedding dimension must be at least 1, got {xi}")

    buckets = rng.integers(0, xi, size=n, dtype=np.int64)
    signs = rng.choice(np.array([-1.0, 1.0]), size=n)

    return SparseEmbedding(target_dimension=xi, source_dimension=n, buckets=buckets, signs=signs)


def _check_source_dimension(embedding: SparseEmbedding, A):
    if embedding.source_dimension != A.shape[0]:
        raise CurArgumentError(
            f"embedding acts on {embedding.source_dimension} rows, matrix has {A.shape[0]}"
        )


def apply_sse(embedding: SparseEmbedding, A: matrix_core.Matrix) -> np.ndarray:
    """ W @ A as a dense xi x n array. A single pass over the stored entries of A. """
    _check_source_dimension(embedding, A)

    product = embedding.as_sparse_operator() @ A
    return matrix_core.to_dense(product, label="sketched matrix")


def apply_sse_compact(embedding: SparseEmbedding, A: matrix_core.Matrix):
    """ W @ A restricted to the occupied buckets.

    Empty buckets give zero rows, so dropping them keeps every Gram matrix, norm and least-squares solution intact. The
    result stays sparse for sparse A.

    Returns:
        (compact product, occupied bucket ids)
    """
    _check_source_dimension(embedding, A)

    occupied = embedding.occupied_buckets()
    operator = embedding.as_sparse_operator()[occupied]

    return operator @ A, occupied


def jlt_dimension(n: int, beta: float) -> int:
    """ Rows s = ceil(8 (4 + 2 beta) ln n) for preserving n squared norms within [1/2, 3/2]. """
    return int(math.ceil(8.0 * (4.0 + 2.0 * beta) * math.log(n)))


def make_sign_sketch(s: int, m: int, rng: np.random.Generator) -> SignSketch:
    entries = rng.choice(np.array([-1.0, 1.0]), size=(s, m)) / math.sqrt(s)
    return SignSketch(entries=entries)


def jlt(B: matrix_core.Matrix, beta: float, rng: np.random.Generator) -> np.ndarray:
    """ S @ B with S a random sign sketch sized to preserve all n column norms of B with prob. >= 1 - n^-beta. """
    n = B.shape[1]
    if beta <= 0:
        raise CurArgumentError(f"beta must be positive, got {beta}")
    if n < 2:
        raise CurArgumentError(f"jlt needs at least two columns, got {n}")

    sketch = make_sign_sketch(jlt_dimension(n, beta), B.shape[0], rng)

    # (B^T S^T)^T keeps sparse B on the sparse side of the product
    return matrix_core.transpose_product(B, sketch.entries.T).T
