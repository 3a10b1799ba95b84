# Python
from __future__ import annotations

import time
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from contextlib import contextmanager
from typing import TYPE_CHECKING, Optional

# 3rd Party
import numpy as np
import scipy.linalg

# 1st Party
from ...linalg import matrix_core
from ...linalg import subset_select
from ...linalg.dataclasses_and_types import SamplingPair, SubspaceFactor, WeightedSelection
from ...linalg.dataclasses_and_types import NumericalFailureError, RankDeficientSketchError
from ..dataclasses_and_types import CurVariant, CurDecomposition, CurDiagnostics
from ..cur_constants import CurConstants, resolve_constants

if TYPE_CHECKING:
    from ...cur_processing_config import CurConfig


@dataclass
class IndexSelection():
    """ Chosen indices of A together with the scale each one carries in the scaled C (or R). """
    indices: np.ndarray
    scales: np.ndarray

    @classmethod
    def unscaled(cls, indices: np.ndarray) -> IndexSelection:
        return cls(indices=np.asarray(indices, dtype=np.int64), scales=np.ones(len(indices)))

    def extended(self, other: IndexSelection) -> IndexSelection:
        return IndexSelection(
            indices=np.concatenate([self.indices, other.indices]),
            scales=np.concatenate([self.scales, other.scales])
        )


class CurPipelineBase(ABC):
    """ Base-class for the CUR pipelines.

    Every variant runs the same skeleton:
    1. Column stage: c1 columns from an approximate SVD factor plus dual-set sparsification, then c2 adaptively sampled
       columns. C = [C1 C2].
    2. Best rank-k subspace of A inside span(C) as (Y, Psi, Delta), and qr(Y Delta) = Z2 D.
    3. Row stage: the mirror image of the column stage with Z2 in place of the SVD factor. R = [R1; R2].
    4. Intersection U, built from the scaled C and R, then folded so it applies to the raw C and R.

    Subclasses pick the primitives used by each stage.
    """

    def __init__(self, variant: CurVariant, config: CurConfig):
        self.variant = variant
        self.config = config


    def decompose(self, A: matrix_core.Matrix, rng: Optional[np.random.Generator] = None,
                  trial: int = 0) -> CurDecomposition:
        """ Runs the pipeline on A.

        Rank-deficient leverage sketches are redrawn from the same generator up to the configured retry budget.

        Raises:
            CurArgumentError: invalid input or constants that do not fit A.
            NumericalFailureError: the retry budget ran out, or a factorization failed.
        """
        A = self._prepare_input(A)
        m, n = A.shape
        constants = resolve_constants(self.config, m, n)

        if rng is None:
            rng = np.random.default_rng(self.config.seed)

        logging.info(
            f"{self.variant.name} CUR on {m} x {n}: k = {self.config.rank}, eps = {self.config.epsilon}, "
            f"c = {constants.c}, r = {constants.r} ({self.config.fidelity.name} constants)"
        )

        for attempt in range(self.config.retry_budget + 1):
            diagnostics = self._create_diagnostics(constants, attempt, trial)
            try:
                return self._run(A, constants, rng, diagnostics)
            except RankDeficientSketchError as error:
                logging.warning(f"{error} - retry {attempt + 1} of {self.config.retry_budget}")

        raise NumericalFailureError(f"leverage sketches stayed rank-deficient after {self.config.retry_budget} retries")


    def _prepare_input(self, A: matrix_core.Matrix) -> matrix_core.Matrix:
        return matrix_core.as_operand(A)


    def _create_diagnostics(self, constants: CurConstants, retries: int, trial: int) -> CurDiagnostics:
        return CurDiagnostics(
            variant=self.variant,
            fidelity=self.config.fidelity,
            seed=self.config.seed,
            trial=trial,
            rank=self.config.rank,
            epsilon=self.config.epsilon,
            constants=constants.as_dict(),
            retries=retries,
        )


    @contextmanager
    def _stage(self, name: str, diagnostics: CurDiagnostics):
        logging.debug(f"---- {name} ----")
        start = time.perf_counter()
        yield
        diagnostics.stage_seconds[name] = time.perf_counter() - start


    def _run(self, A: matrix_core.Matrix, constants: CurConstants, rng: np.random.Generator,
             diagnostics: CurDiagnostics) -> CurDecomposition:
        k = self.config.rank

        with self._stage("columns", diagnostics):
            columns = self._select_columns(A, constants, rng, diagnostics)
            scaled_c = matrix_core.select_columns(A, columns.indices) * columns.scales
            self._record_residual(diagnostics, "columns", A, scaled_c)

        with self._stage("subspace", diagnostics):
            factor = self._subspace_factor(A, scaled_c, rng, constants)
            diagnostics.subspace_full_rank = factor.full_rank

            factorization = matrix_core.qr(factor.basis)
            z2, d = factorization.q, factorization.r
            self._record_residual(diagnostics, "subspace", A, z2)

        with self._stage("rows", diagnostics):
            rows = self._select_rows(A, z2, constants, rng, diagnostics)
            scaled_r = matrix_core.select_rows(A, rows.indices) * rows.scales[:, np.newaxis]

        with self._stage("intersection", diagnostics):
            # Psi^{-1} Delta D^{-1}: maps C onto Z2, i.e. C @ leading == Z2
            leading = factor.apply_psi_inverse(factor.delta @ scipy.linalg.solve_triangular(d, np.eye(d.shape[0])))
            scaled_u = self._intersection(A, scaled_c, scaled_r, leading, z2, rng, constants)

        # C_scaled U R_scaled = C_raw (diag(cs) U diag(rs)) R_raw
        u = columns.scales[:, np.newaxis] * scaled_u * rows.scales[np.newaxis, :]

        diagnostics.column_scales = columns.scales.tolist()
        diagnostics.row_scales = rows.scales.tolist()

        decomposition = CurDecomposition(
            column_indices=columns.indices,
            row_indices=rows.indices,
            c_matrix=matrix_core.select_columns(A, columns.indices),
            u_matrix=u,
            r_matrix=matrix_core.select_rows(A, rows.indices),
            k=k,
            diagnostics=diagnostics,
        )

        self._check_guarantees(A, decomposition)
        return decomposition


    """ Stage building blocks shared by the randomized variants """

    def _leverage_dual_set(self, factor: np.ndarray, sampled_vectors, sample_count: int, selection_count: int,
                           rng: np.random.Generator, axis_name: str) -> IndexSelection:
        """ Leverage-score sampling of 'sample_count' indices from the rows of 'factor', followed by dual-set
        sparsification down to 'selection_count' of them.

        Args:
            factor: the orthonormal factor (Z1 for columns, Z2 for rows), one row per candidate index.
            sampled_vectors: callable mapping the SamplingPair to the residual vectors of the sampled indices, one per
                row (the 'A' side of the dual set).
        """
        k = factor.shape[1]
        pair: SamplingPair = subset_select.rand_sampling(factor, sample_count, 1.0, rng)

        sketched_factor = pair.sample_rows(factor).T        # k x h
        sketched_svd = matrix_core.svd(sketched_factor)
        if sketched_svd.rank < k:
            raise RankDeficientSketchError(
                f"{axis_name} leverage sketch has rank {sketched_svd.rank} < k = {k}"
            )

        selection: WeightedSelection = self._dual_set(sketched_svd.right, sampled_vectors(pair), selection_count, rng)

        chosen = pair.indices[selection.step_indices]
        scales = pair.scales[selection.step_indices] * selection.column_scales
        return IndexSelection(indices=chosen, scales=scales)


    def _dual_set(self, V: np.ndarray, A, r: int, rng: np.random.Generator) -> WeightedSelection:
        return subset_select.bss_sampling(V, A, r)


    @staticmethod
    def _sampled_column_residuals(A: matrix_core.Matrix, z1: np.ndarray, a_times_z1: np.ndarray):
        """ Rows of (E1 Omega D)^T with E1 = A - A Z1 Z1^T, never forming E1. """
        def residuals(pair: SamplingPair) -> np.ndarray:
            sampled = matrix_core.select_columns(A, pair.indices) * pair.scales
            return (sampled - a_times_z1 @ pair.sample_rows(z1).T).T
        return residuals


    @staticmethod
    def _sampled_row_residuals(A: matrix_core.Matrix, z2: np.ndarray, z2t_a: np.ndarray):
        """ Rows of (E2 Omega D)^T with E2 = A^T - A^T Z2 Z2^T, never forming E2. """
        def residuals(pair: SamplingPair) -> np.ndarray:
            sampled = matrix_core.select_rows(A, pair.indices) * pair.scales[:, np.newaxis]
            return sampled - pair.sample_rows(z2) @ z2t_a
        return residuals


    def _record_residual(self, diagnostics: CurDiagnostics, name: str, A: matrix_core.Matrix, V: np.ndarray):
        if self.config.record_stage_residuals:
            diagnostics.residuals[name] = matrix_core.projection_residual_sq(A, V)


    """ Variant hooks """

    @abstractmethod
    def _select_columns(self, A: matrix_core.Matrix, constants: CurConstants, rng: np.random.Generator,
                        diagnostics: CurDiagnostics) -> IndexSelection:
        raise NotImplementedError("Must override _select_columns().")


    @abstractmethod
    def _subspace_factor(self, A: matrix_core.Matrix, scaled_c: np.ndarray, rng: np.random.Generator,
                         constants: CurConstants) -> SubspaceFactor:
        raise NotImplementedError("Must override _subspace_factor().")


    @abstractmethod
    def _select_rows(self, A: matrix_core.Matrix, z2: np.ndarray, constants: CurConstants, rng: np.random.Generator,
                     diagnostics: CurDiagnostics) -> IndexSelection:
        raise NotImplementedError("Must override _select_rows().")


    def _intersection(self, A: matrix_core.Matrix, scaled_c: np.ndarray, scaled_r: np.ndarray, leading: np.ndarray,
                      z2: np.ndarray, rng: np.random.Generator, constants: CurConstants) -> np.ndarray:
        """ U = Psi^{-1} Delta D^{-1} Z2^T A R^+ """
        return leading @ projected_row_solve(A, z2, scaled_r)


    def _check_guarantees(self, A: matrix_core.Matrix, decomposition: CurDecomposition):
        pass


def projected_row_solve(A: matrix_core.Matrix, z2: np.ndarray, R: np.ndarray) -> np.ndarray:
    """ (Z2^T A) R^+ via a minimum-norm least-squares solve against R^T. """
    z2t_a = matrix_core.transpose_product(A, z2).T                                 # k x n
    cutoff = max(R.shape) * matrix_core.RANK_TOLERANCE_FACTOR
    solution, _, _, _ = scipy.linalg.lstsq(R.T, z2t_a.T, cond=cutoff, lapack_driver="gelsd")
    return solution.T
