# Python
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

# 3rd Party
import numpy as np
import scipy.linalg
import scipy.sparse as sps

# 1st Party
from .cur_pipeline_base import CurPipelineBase, IndexSelection
from ...linalg import matrix_core
from ...linalg import adaptive
from ...linalg import approx_svd
from ...linalg import sketch
from ...linalg import subset_select
from ...linalg import subspace_approx
from ...linalg.dataclasses_and_types import SubspaceFactor, WeightedSelection
from ..dataclasses_and_types import CurVariant, CurDiagnostics
from ..cur_constants import CurConstants

if TYPE_CHECKING:
    from ...cur_processing_config import CurConfig


# Accuracy handed to the sketched dual-set sparsification
DUAL_SET_EPSILON = 0.5


class CurPipelineInputSparsity(CurPipelineBase):
    """ Randomized CUR in input-sparsity time.

    A is held in CSR form throughout. Every product with A is a single pass over its stored entries and no m x n dense
    array is ever built, which DenseAllocationAudit can confirm. The intersection matrix is the solution of a
    sketched regression:

        U = Psi^{-1} Delta D^{-1} (W C Psi^{-1} Delta D^{-1})^+ W A R^+

    with W a sparse embedding of dimension xi_U.
    """

    def __init__(self, config: CurConfig):
        super().__init__(CurVariant.Sparse, config)
        self.xi_constant = config.constants.xi_constant


    def _prepare_input(self, A: matrix_core.Matrix) -> matrix_core.Matrix:
        if not matrix_core.is_sparse(A):
            logging.debug("Converting dense input to CSR")
            A = sps.csr_array(np.asarray(A, dtype=np.float64))
        return matrix_core.as_operand(A)


    def _dual_set(self, V: np.ndarray, A, r: int, rng: np.random.Generator) -> WeightedSelection:
        return subset_select.bss_sampling_sparse(V, A, r, DUAL_SET_EPSILON, rng, self.xi_constant)


    def _select_columns(self, A: matrix_core.Matrix, constants: CurConstants, rng: np.random.Generator,
                        diagnostics: CurDiagnostics) -> IndexSelection:
        k = self.config.rank

        z1 = approx_svd.sparse_svd(A, k, 1.0, rng, self.xi_constant).z
        a_times_z1 = np.asarray(A @ z1)

        c1 = self._leverage_dual_set(
            z1, self._sampled_column_residuals(A, z1, a_times_z1), constants.h1, constants.c1, rng, "column"
        )
        c1_matrix = matrix_core.select_columns(A, c1.indices) * c1.scales
        self._record_residual(diagnostics, "c1", A, c1_matrix)

        c2 = adaptive.adaptive_cols_sparse(A, c1_matrix, constants.c2, rng)
        return c1.extended(IndexSelection.unscaled(c2.indices))


    def _subspace_factor(self, A: matrix_core.Matrix, scaled_c: np.ndarray, rng: np.random.Generator,
                         constants: CurConstants) -> SubspaceFactor:
        return subspace_approx.approx_subspace_svd(
            A, scaled_c, self.config.rank, self.config.epsilon, rng, self.xi_constant
        )


    def _select_rows(self, A: matrix_core.Matrix, z2: np.ndarray, constants: CurConstants, rng: np.random.Generator,
                     diagnostics: CurDiagnostics) -> IndexSelection:
        z2t_a = matrix_core.transpose_product(A, z2).T

        r1 = self._leverage_dual_set(
            z2, self._sampled_row_residuals(A, z2, z2t_a), constants.h2, constants.r1, rng, "row"
        )
        r1_matrix = matrix_core.select_rows(A, r1.indices) * r1.scales[:, np.newaxis]

        r2 = adaptive.adaptive_rows_sparse(A, z2, r1_matrix, constants.r2, rng)
        return r1.extended(IndexSelection.unscaled(r2.indices))


    def _intersection(self, A: matrix_core.Matrix, scaled_c: np.ndarray, scaled_r: np.ndarray, leading: np.ndarray,
                      z2: np.ndarray, rng: np.random.Generator, constants: CurConstants) -> np.ndarray:
        regressors = scaled_c @ leading                                     # m x k
        targets = np.asarray(A @ matrix_core.pinv(scaled_r))                # m x r

        # One embedding for both sides of the regression
        embedding = sketch.make_sse(A.shape[0], constants.xi_u, rng)
        sketched, occupied = sketch.apply_sse_compact(embedding, np.hstack([regressors, targets]))
        sketched = np.asarray(sketched)

        logging.debug(f"Intersection regression: xi_U = {constants.xi_u}, {occupied.shape[0]} occupied buckets")

        width = regressors.shape[1]
        cutoff = max(sketched.shape) * matrix_core.RANK_TOLERANCE_FACTOR
        coefficients, _, _, _ = scipy.linalg.lstsq(
            sketched[:, :width], sketched[:, width:], cond=cutoff, lapack_driver="gelsd"
        )
        return leading @ coefficients
