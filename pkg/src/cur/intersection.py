# Python

# 3rd Party
import numpy as np
import scipy.linalg

# 1st Party
from ..linalg import matrix_core
from ..linalg import subspace_approx
from ..linalg.dataclasses_and_types import CurArgumentError
from .dataclasses_and_types import CurDecomposition, CurDiagnostics
from .pipelines import projected_row_solve


def intersection_matrix_forms(A: matrix_core.Matrix, C: np.ndarray, R: np.ndarray, k: int) -> dict[str, np.ndarray]:
    """ The intersection matrix U for given C and R, written two ways.

    'triangular':     Psi^{-1} Delta D^{-1} Z2^T A R^+     (what the pipelines compute)
    'pseudo_inverse': C^+ Z2 Z2^T A R^+

    Both satisfy C U R = Z2 Z2^T A R^+ R, and they coincide when C has full column rank.
    """
    A = matrix_core.as_operand(A)
    factor = subspace_approx.best_subspace_svd(A, C, k)
    factorization = matrix_core.qr(factor.basis)
    z2, d = factorization.q, factorization.r

    leading = factor.apply_psi_inverse(factor.delta @ scipy.linalg.solve_triangular(d, np.eye(d.shape[0])))
    projected = projected_row_solve(A, z2, R)

    return {
        "triangular": leading @ projected,
        "pseudo_inverse": matrix_core.pinv(C) @ z2 @ projected,
    }


def cur_from_indices(A: matrix_core.Matrix, column_indices, row_indices, k: int) -> CurDecomposition:
    """ CUR with caller-chosen columns and rows and the best rank-k U for them.

    Serves as a reference point: no U of rank k does better for this C and R.
    """
    A = matrix_core.as_operand(A)
    m, n = A.shape
    columns = np.asarray(column_indices, dtype=np.int64)
    rows = np.asarray(row_indices, dtype=np.int64)

    if columns.size == 0 or rows.size == 0:
        raise CurArgumentError("at least one column and one row are required")
    if columns.min() < 0 or columns.max() >= n or rows.min() < 0 or rows.max() >= m:
        raise CurArgumentError(f"indices out of range for a {m} x {n} input")

    C = matrix_core.select_columns(A, columns)
    R = matrix_core.select_rows(A, rows)

    diagnostics = CurDiagnostics(
        rank=k,
        column_scales=[1.0] * columns.shape[0],
        row_scales=[1.0] * rows.shape[0],
    )

    return CurDecomposition(
        column_indices=columns,
        row_indices=rows,
        c_matrix=C,
        u_matrix=subspace_approx.rank_constrained_u(A, C, R, k),
        r_matrix=R,
        k=k,
        diagnostics=diagnostics,
    )
