# Python
import logging

# 3rd Party

# 1st Party
from ..linalg import matrix_core
from ..linalg.dataclasses_and_types import CurArgumentError
from ..developer_options import DeveloperOptions
from ..components import format_ratio
from .dataclasses_and_types import CurDecomposition, EvaluationReport


# Optimum below this fraction of ||A||_F^2 means A has rank at most k
EXACT_RATIO = 1e-24

# A CUR error below this fraction of ||A||_F^2 reproduces A
EXACT_RECONSTRUCTION_RATIO = 1e-16


def _check_shapes(A: matrix_core.Matrix, decomposition: CurDecomposition):
    m, n = A.shape
    c, r = decomposition.c, decomposition.r
    expected = {
        "C": (m, c),
        "U": (c, r),
        "R": (r, n),
    }
    actual = {
        "C": decomposition.c_matrix.shape,
        "U": decomposition.u_matrix.shape,
        "R": decomposition.r_matrix.shape,
    }
    for name, shape in expected.items():
        if tuple(actual[name]) != shape:
            raise CurArgumentError(f"{name} has shape {tuple(actual[name])}, expected {shape} for a {m} x {n} input")


def reconstruction_error_sq(A: matrix_core.Matrix, decomposition: CurDecomposition) -> float:
    """ ||A - C U R||_F^2.

    Small inputs are compared in one go. Larger ones are compared block by block over the rows, so that neither A nor
    C U R is ever held in full.
    """
    m, n = A.shape
    if m * n <= DeveloperOptions.evaluation_dense_entry_limit:
        dense = matrix_core.to_dense(A, label="evaluation")
        return matrix_core.frobenius_sq(dense - decomposition.reconstruct())

    cu = decomposition.c_matrix @ decomposition.u_matrix
    block_size = DeveloperOptions.evaluation_row_block_size

    total = 0.0
    for start in range(0, m, block_size):
        stop = min(start + block_size, m)
        block = matrix_core.to_dense(A[start:stop], label="evaluation block")
        total += matrix_core.frobenius_sq(block - cu[start:stop] @ decomposition.r_matrix)

    return total


def optimal_error_sq(A: matrix_core.Matrix, k: int) -> float:
    """ ||A - A_k||_F^2 """
    m, n = A.shape
    if matrix_core.is_sparse(A) and m * n <= DeveloperOptions.evaluation_dense_entry_limit:
        return matrix_core.best_rank_k_error_sq(matrix_core.to_dense(A, label="evaluation"), k)
    return matrix_core.best_rank_k_error_sq(A, k)


def evaluate(A: matrix_core.Matrix, decomposition: CurDecomposition) -> EvaluationReport:
    """ Compares a decomposition against the best rank-k approximation of A.

    Args:
        A: the matrix that was decomposed.
        decomposition: C, U and R to compare.

    Returns:
        err^2, opt^2 and their ratio. When opt^2 is zero the ratio is None and 'exact' tells whether C U R reproduces A.
    """
    A = matrix_core.as_operand(A)
    _check_shapes(A, decomposition)

    err_sq = reconstruction_error_sq(A, decomposition)
    opt_sq = optimal_error_sq(A, decomposition.k)
    reference_sq = matrix_core.frobenius_sq(A)

    if opt_sq <= EXACT_RATIO * reference_sq:
        ratio = None
        exact = err_sq <= EXACT_RECONSTRUCTION_RATIO * reference_sq
    else:
        ratio = err_sq / opt_sq
        exact = False

    report = EvaluationReport(
        err_sq=err_sq,
        opt_sq=opt_sq,
        ratio=ratio,
        c=decomposition.c,
        r=decomposition.r,
        rank_u=matrix_core.numerical_rank(decomposition.u_matrix) if decomposition.u_matrix.size else 0,
        exact=exact,
    )

    logging.info(
        f"err^2 = {err_sq:.6g}, opt^2 = {opt_sq:.6g}, ratio = {format_ratio(ratio, exact)}, rank(U) = {report.rank_u}"
    )

    return report
