# Python
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

# 3rd Party
import numpy as np

# 1st Party
from .cur_pipeline_base import CurPipelineBase, IndexSelection
from ...linalg import matrix_core
from ...linalg import adaptive
from ...linalg import approx_svd
from ...linalg import subset_select
from ...linalg import subspace_approx
from ...linalg.dataclasses_and_types import SubspaceFactor, InvariantViolationError
from ..dataclasses_and_types import CurVariant, CurDiagnostics, CurDecomposition
from ..cur_constants import CurConstants

if TYPE_CHECKING:
    from ...cur_processing_config import CurConfig


# ||A - C1 C1^+ A||^2 <= COLUMN_STAGE_FACTOR ||A - A_k||^2 after the dual-set column stage
COLUMN_STAGE_FACTOR = 10.0

# Final bound: ||A - CUR||^2 <= (1 + FINAL_BOUND_FACTOR eps) ||A - A_k||^2
FINAL_BOUND_FACTOR = 8.0

RELATIVE_SLACK = 1e-9
ABSOLUTE_SLACK = 1e-20


def _bound_holds(value: float, bound: float, reference_sq: float) -> bool:
    return value <= bound * (1.0 + RELATIVE_SLACK) + ABSOLUTE_SLACK * reference_sq


class CurPipelineDeterministic(CurPipelineBase):
    """ Deterministic CUR in polynomial time.

    Exact SVD in place of the approximate deterministic SVD, dual-set sparsification on Z1 and Z2 directly, and
    derandomized adaptive sampling. ||A - CUR||_F^2 <= (1 + 8 eps) ||A - A_k||_F^2 holds on every run and is checked
    when 'assert_guarantees' is set. The same A and config always give the same output.
    """

    def __init__(self, config: CurConfig):
        super().__init__(CurVariant.Deterministic, config)


    def _prepare_input(self, A: matrix_core.Matrix) -> matrix_core.Matrix:
        return matrix_core.to_dense(matrix_core.as_operand(A), label="deterministic pipeline")


    def _create_diagnostics(self, constants: CurConstants, retries: int, trial: int) -> CurDiagnostics:
        diagnostics = super()._create_diagnostics(constants, retries, trial)
        diagnostics.exact_svd_substitute = True
        return diagnostics


    def _select_columns(self, A: np.ndarray, constants: CurConstants, rng: np.random.Generator,
                        diagnostics: CurDiagnostics) -> IndexSelection:
        k = self.config.rank

        factorization = matrix_core.svd(A)
        optimal_sq = factorization.tail_energy(k)
        diagnostics.residuals["optimal"] = optimal_sq

        z1 = approx_svd.deterministic_svd(A, k, 1.0).z
        residual_t = (A - (A @ z1) @ z1.T).T                   # E1^T, n x m

        selection = subset_select.bss_sampling(z1, residual_t, constants.c1)
        c1 = IndexSelection(indices=selection.step_indices, scales=selection.column_scales)
        c1_matrix = A[:, c1.indices] * c1.scales

        c1_residual = matrix_core.projection_residual_sq(A, c1_matrix)
        diagnostics.residuals["c1"] = c1_residual
        if self.config.assert_guarantees and not _bound_holds(c1_residual, COLUMN_STAGE_FACTOR * optimal_sq,
                                                              matrix_core.frobenius_sq(A)):
            raise InvariantViolationError(
                f"column stage residual {c1_residual:.6g} exceeds {COLUMN_STAGE_FACTOR:g} x optimum {optimal_sq:.6g}"
            )

        c2 = adaptive.adaptive_cols_d(A, c1_matrix, constants.c2, k, factorization)
        return c1.extended(IndexSelection.unscaled(c2))


    def _subspace_factor(self, A: np.ndarray, scaled_c: np.ndarray, rng: np.random.Generator,
                         constants: CurConstants) -> SubspaceFactor:
        return subspace_approx.best_subspace_svd(A, scaled_c, self.config.rank)


    def _select_rows(self, A: np.ndarray, z2: np.ndarray, constants: CurConstants, rng: np.random.Generator,
                     diagnostics: CurDiagnostics) -> IndexSelection:
        residual = A - z2 @ (z2.T @ A)                          # E2^T, m x n

        selection = subset_select.bss_sampling(z2, residual, constants.r1)
        r1 = IndexSelection(indices=selection.step_indices, scales=selection.column_scales)
        r1_matrix = A[r1.indices] * r1.scales[:, np.newaxis]

        r2 = adaptive.adaptive_rows_d(A, z2, r1_matrix, constants.r2)
        return r1.extended(IndexSelection.unscaled(r2))


    def _check_guarantees(self, A: np.ndarray, decomposition: CurDecomposition):
        optimal_sq = decomposition.diagnostics.residuals["optimal"]
        error_sq = matrix_core.frobenius_sq(A - decomposition.reconstruct())
        bound = (1.0 + FINAL_BOUND_FACTOR * self.config.epsilon) * optimal_sq

        logging.info(f"Deterministic CUR error {error_sq:.6g}, bound {bound:.6g}")

        if self.config.assert_guarantees and not _bound_holds(error_sq, bound, matrix_core.frobenius_sq(A)):
            raise InvariantViolationError(f"CUR error {error_sq:.6g} exceeds the guaranteed {bound:.6g}")
