# Python
from __future__ import annotations

from typing import TYPE_CHECKING

# 3rd Party
import numpy as np

# 1st Party
from .cur_pipeline_base import CurPipelineBase, IndexSelection
from ...linalg import matrix_core
from ...linalg import adaptive
from ...linalg import approx_svd
from ...linalg import subspace_approx
from ...linalg.dataclasses_and_types import SubspaceFactor
from ..dataclasses_and_types import CurVariant, CurDiagnostics
from ..cur_constants import CurConstants

if TYPE_CHECKING:
    from ...cur_processing_config import CurConfig


class CurPipelineLinearTime(CurPipelineBase):
    """ Randomized CUR in time linear in the size of A.

    Succeeds with probability at least 0.2 with ||A - CUR||_F^2 <= (1 + 20 eps) ||A - A_k||_F^2.
    """

    def __init__(self, config: CurConfig):
        super().__init__(CurVariant.Linear, config)


    def _select_columns(self, A: matrix_core.Matrix, constants: CurConstants, rng: np.random.Generator,
                        diagnostics: CurDiagnostics) -> IndexSelection:
        k = self.config.rank

        z1 = approx_svd.randomized_svd(A, k, 1.0, rng).z
        a_times_z1 = np.asarray(A @ z1)

        c1 = self._leverage_dual_set(
            z1, self._sampled_column_residuals(A, z1, a_times_z1), constants.h1, constants.c1, rng, "column"
        )
        c1_matrix = matrix_core.select_columns(A, c1.indices) * c1.scales
        self._record_residual(diagnostics, "c1", A, c1_matrix)

        c2 = adaptive.adaptive_cols(A, c1_matrix, 1.0, constants.c2, rng)
        return c1.extended(IndexSelection.unscaled(c2.indices))


    def _subspace_factor(self, A: matrix_core.Matrix, scaled_c: np.ndarray, rng: np.random.Generator,
                         constants: CurConstants) -> SubspaceFactor:
        return subspace_approx.best_subspace_svd(A, scaled_c, self.config.rank)


    def _select_rows(self, A: matrix_core.Matrix, z2: np.ndarray, constants: CurConstants, rng: np.random.Generator,
                     diagnostics: CurDiagnostics) -> IndexSelection:
        z2t_a = matrix_core.transpose_product(A, z2).T

        r1 = self._leverage_dual_set(
            z2, self._sampled_row_residuals(A, z2, z2t_a), constants.h2, constants.r1, rng, "row"
        )
        r1_matrix = matrix_core.select_rows(A, r1.indices) * r1.scales[:, np.newaxis]

        r2 = adaptive.adaptive_rows(A, z2, r1_matrix, constants.r2, rng)
        return r1.extended(IndexSelection.unscaled(r2.indices))
