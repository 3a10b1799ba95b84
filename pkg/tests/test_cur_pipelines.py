import dataclasses

import numpy as np
import pytest

from src.cur import cur_linear_time, cur_input_sparsity, cur_deterministic, create_cur_pipeline
from src.cur import evaluate, run_trials, trial_generators
from src.cur.cur_constants import resolve_constants
from src.cur.dataclasses_and_types import CurVariant, CurFidelity
from src.cur_processing_config import CurConfig, CurConstantOverrides
from src.linalg import matrix_core
from src.linalg import subspace_approx
from src.linalg import approx_svd, subset_select
from src.linalg.dataclasses_and_types import CurArgumentError, NumericalFailureError, RankDeficientSketchError
from src.harness import exact_rank, low_rank_plus_noise, sparse_random, sparse_exact_rank, within_guarantee

from tests.helpers.statistical_tolerance import assert_passes_k_of_n


def deterministic_config(k=1, epsilon=1.0, **kwargs):
    return CurConfig(rank=k, epsilon=epsilon, variant=CurVariant.Deterministic, **kwargs)


def heuristic_config(variant, k, epsilon, **kwargs):
    return CurConfig(rank=k, epsilon=epsilon, variant=variant, fidelity=CurFidelity.Heuristic, **kwargs)


class TestConfig:

    @pytest.mark.parametrize("kwargs", [
        dict(rank=0, epsilon=0.5),
        dict(rank=2, epsilon=0.0),
        dict(rank=2, epsilon=1.5),
        dict(rank=2, epsilon=0.5, trials=0),
        dict(rank=2, epsilon=0.5, retry_budget=-1),
    ])
    def test_rejects_invalid_values(self, kwargs):
        with pytest.raises(CurArgumentError):
            CurConfig(**kwargs)

    def test_heuristic_linear_constants(self):
        constants = resolve_constants(heuristic_config(CurVariant.Linear, 3, 0.5), 300, 200)

        assert (constants.c1, constants.c2, constants.r1, constants.r2) == (12, 24, 12, 24)
        assert constants.h1 == 197
        assert constants.h2 == 99
        assert constants.xi_u == 1440

    def test_paper_constants_must_fit(self):
        config = CurConfig(rank=2, epsilon=0.5, variant=CurVariant.Linear, fidelity=CurFidelity.Paper)
        with pytest.raises(CurArgumentError, match="paper constants"):
            resolve_constants(config, 40, 40)

    def test_heuristic_clamps_leverage_samples(self):
        constants = resolve_constants(heuristic_config(CurVariant.Linear, 2, 1.0), 60, 30)
        assert constants.h1 == 30
        assert constants.h2 == 60

    def test_overrides(self):
        overrides = CurConstantOverrides(c1=5, c2_factor=2.0, r2_factor=3.0)
        constants = resolve_constants(deterministic_config(k=1, epsilon=0.5, constants=overrides), 20, 20)

        assert (constants.c1, constants.c2, constants.r1, constants.r2) == (5, 4, 4, 6)


class TestDeterministicPipeline:

    def test_bound_on_noisy_low_rank(self):
        A = low_rank_plus_noise(16, 16, 3, 0.1, np.random.default_rng(0))
        config = deterministic_config()

        decomposition = cur_deterministic(A, config)
        report = evaluate(A, decomposition)

        assert report.c == 14 and report.r == 14
        assert report.ratio <= (1 + 8 * config.epsilon) * (1 + 1e-9)
        assert report.rank_u <= 1

    @pytest.mark.slow
    def test_bound_on_twenty_matrices(self):
        config = deterministic_config(k=2, epsilon=1.0)
        for seed in range(20):
            A = low_rank_plus_noise(40, 40, 5, 0.1, np.random.default_rng(seed))
            report = evaluate(A, cur_deterministic(A, config))
            assert report.ratio <= 9.0 * (1 + 1e-9)

    def test_exact_rank_is_recovered(self):
        A = exact_rank(16, 16, 1, np.random.default_rng(1))

        report = evaluate(A, cur_deterministic(A, deterministic_config()))

        assert report.ratio is None
        assert report.exact

    def test_same_input_same_output(self):
        A = np.random.default_rng(2).standard_normal((16, 16))
        first = cur_deterministic(A, deterministic_config())
        second = cur_deterministic(A, deterministic_config(seed=99))

        assert np.array_equal(first.column_indices, second.column_indices)
        assert np.array_equal(first.row_indices, second.row_indices)
        assert np.array_equal(first.u_matrix, second.u_matrix)

    def test_raw_columns_and_rows(self):
        A = np.random.default_rng(3).standard_normal((16, 16))
        decomposition = cur_deterministic(A, deterministic_config())

        np.testing.assert_array_equal(decomposition.c_matrix, A[:, decomposition.column_indices])
        np.testing.assert_array_equal(decomposition.r_matrix, A[decomposition.row_indices])
        assert len(decomposition.diagnostics.column_scales) == decomposition.c
        assert decomposition.diagnostics.exact_svd_substitute

    def test_intersection_projects_onto_row_space(self):
        A = np.random.default_rng(4).standard_normal((16, 16))
        decomposition = cur_deterministic(A, deterministic_config())

        C = decomposition.c_matrix * np.asarray(decomposition.diagnostics.column_scales)
        R = decomposition.r_matrix
        z2 = matrix_core.qr(subspace_approx.best_subspace_svd(A, C, 1).basis).q
        expected = z2 @ z2.T @ A @ np.linalg.pinv(R) @ R

        np.testing.assert_allclose(decomposition.reconstruct(), expected, atol=1e-8 * np.linalg.norm(A))


class TestLinearTimePipeline:

    def test_exact_rank_is_recovered(self):
        A = exact_rank(300, 200, 3, np.random.default_rng(5))
        config = heuristic_config(CurVariant.Linear, 3, 0.5)

        report = evaluate(A, cur_linear_time(A, config, np.random.default_rng(0)))

        assert report.exact
        assert report.rank_u <= 3

    def test_reproducible_per_seed(self):
        A = low_rank_plus_noise(120, 100, 3, 0.1, np.random.default_rng(6))
        config = heuristic_config(CurVariant.Linear, 3, 0.5)

        first = cur_linear_time(A, config, np.random.default_rng(11))
        second = cur_linear_time(A, config, np.random.default_rng(11))

        assert np.array_equal(first.column_indices, second.column_indices)
        assert np.array_equal(first.u_matrix, second.u_matrix)

    def test_guarantee_with_constant_probability(self):
        A = low_rank_plus_noise(120, 100, 3, 0.1, np.random.default_rng(7))
        config = heuristic_config(CurVariant.Linear, 3, 0.5)

        def within(seed):
            return within_guarantee(evaluate(A, cur_linear_time(A, config, np.random.default_rng(seed))), config)

        assert_passes_k_of_n(within, n_trials=20, min_successes=4)

    def test_retry_budget(self, monkeypatch):
        config = heuristic_config(CurVariant.Linear, 2, 1.0, retry_budget=2)
        pipeline = create_cur_pipeline(config)
        attempts = []

        def rank_deficient(*args, **kwargs):
            attempts.append(1)
            raise RankDeficientSketchError("column leverage sketch has rank 1 < k = 2")

        monkeypatch.setattr(pipeline, "_select_columns", rank_deficient)

        with pytest.raises(NumericalFailureError, match="after 2 retries"):
            pipeline.decompose(np.random.default_rng(0).standard_normal((30, 30)))
        assert len(attempts) == 3


class TestInputSparsityPipeline:

    def test_no_full_size_densification(self):
        A = sparse_random(500, 400, 0.01, np.random.default_rng(8))
        config = heuristic_config(CurVariant.Sparse, 4, 0.5)

        with matrix_core.DenseAllocationAudit(A.shape) as audit:
            decomposition = cur_input_sparsity(A, config, np.random.default_rng(0))

        assert not audit.violations
        report = evaluate(A, decomposition)
        assert report.rank_u <= 4
        assert np.isfinite(report.ratio)

    def test_exact_rank_is_recovered(self):
        A = sparse_exact_rank(300, 250, 3, 0.02, np.random.default_rng(9))
        config = heuristic_config(CurVariant.Sparse, 3, 0.5)

        report = evaluate(A, cur_input_sparsity(A, config, np.random.default_rng(1)))

        assert report.exact

    def test_dense_input_is_accepted(self):
        A = low_rank_plus_noise(150, 120, 2, 0.05, np.random.default_rng(10))
        config = heuristic_config(CurVariant.Sparse, 2, 0.5)

        decomposition = cur_input_sparsity(A, config, np.random.default_rng(2))

        assert isinstance(decomposition.c_matrix, np.ndarray)
        assert decomposition.c_matrix.shape[0] == 150


class TestTrials:

    def test_single_trial_uses_seed_directly(self):
        generator = trial_generators(5, 1)[0]
        assert generator.integers(0, 2**31) == np.random.default_rng(5).integers(0, 2**31)

    def test_trial_streams_differ(self):
        first, second = trial_generators(5, 2)
        assert first.integers(0, 2**31) != second.integers(0, 2**31)

    def test_deterministic_variant_runs_once(self):
        A = np.random.default_rng(11).standard_normal((16, 16))
        outcome = run_trials(A, deterministic_config(trials=4))
        assert len(outcome.trial_ratios) == 1

    def test_best_trial_is_kept(self):
        A = low_rank_plus_noise(120, 100, 3, 0.1, np.random.default_rng(12))
        config = heuristic_config(CurVariant.Linear, 3, 0.5, trials=4)

        outcome = run_trials(A, config)

        assert len(outcome.trial_ratios) == 4
        assert outcome.evaluation.ratio == min(outcome.trial_ratios)

    def test_all_trials_failing(self, monkeypatch):
        config = heuristic_config(CurVariant.Linear, 2, 1.0, trials=2)
        pipeline = create_cur_pipeline(config)

        def failing(*args, **kwargs):
            raise NumericalFailureError("svd did not converge")

        monkeypatch.setattr(pipeline, "decompose", failing)
        monkeypatch.setattr("src.cur.cur_runner.create_cur_pipeline", lambda _: pipeline)

        with pytest.raises(NumericalFailureError, match="all 2 trials failed"):
            run_trials(np.eye(10), config)

    def test_variant_is_forced_by_entry_point(self):
        A = np.random.default_rng(13).standard_normal((16, 16))
        config = dataclasses.replace(deterministic_config(), variant=CurVariant.Linear)

        decomposition = cur_deterministic(A, config)

        assert decomposition.diagnostics.variant == CurVariant.Deterministic


@pytest.mark.slow
class TestAcceptanceScale:

    def test_linear_time_on_large_dense_input(self):
        A = low_rank_plus_noise(2000, 1500, 10, 0.1, np.random.default_rng(14))
        config = heuristic_config(CurVariant.Linear, 10, 0.5, trials=3)

        outcome = run_trials(A, config)

        assert within_guarantee(outcome.evaluation, config)

    def test_input_sparsity_on_large_sparse_input(self):
        A = sparse_random(20_000, 10_000, 0.001, np.random.default_rng(15))
        config = heuristic_config(CurVariant.Sparse, 5, 0.5, trials=3)

        with matrix_core.DenseAllocationAudit(A.shape) as audit:
            outcome = run_trials(A, config)

        assert not audit.violations
        assert within_guarantee(outcome.evaluation, config)

    def test_linear_time_at_paper_constants(self):
        A = low_rank_plus_noise(4000, 4000, 2, 0.1, np.random.default_rng(16))
        config = CurConfig(rank=2, epsilon=0.9, variant=CurVariant.Linear, fidelity=CurFidelity.Paper)

        constants = resolve_constants(config, *A.shape)
        assert (constants.c1, constants.c2) == (8, 3600)
        assert constants.c == constants.r == 3608

        def within(seed):
            return within_guarantee(evaluate(A, cur_linear_time(A, config, np.random.default_rng(seed))), config)

        assert_passes_k_of_n(within, n_trials=10, min_successes=4)

    def test_input_sparsity_ratio_on_sparse_input(self):
        A = sparse_random(2000, 1500, 0.005, np.random.default_rng(17))
        config = heuristic_config(CurVariant.Sparse, 5, 0.5)

        def below_two(seed):
            report = evaluate(A, cur_input_sparsity(A, config, np.random.default_rng(seed)))
            return report.ratio is not None and report.ratio <= 2.0

        assert_passes_k_of_n(below_two, n_trials=100, min_successes=80)


@pytest.mark.slow
class TestColumnStage:

    def test_dual_set_columns_on_fifty_matrices(self):
        k = 4
        for seed in range(50):
            A = np.random.default_rng(300 + seed).standard_normal((200, 150))
            optimal_sq = matrix_core.best_rank_k_error_sq(A, k)

            z1 = approx_svd.deterministic_svd(A, k, 1.0).z
            selection = subset_select.bss_sampling(z1, (A - (A @ z1) @ z1.T).T, 4 * k)
            c1 = A[:, selection.step_indices] * selection.column_scales

            assert matrix_core.projection_residual_sq(A, c1) <= 10.0 * optimal_sq * (1 + 1e-9)

    def test_leverage_columns_with_constant_probability(self):
        A = low_rank_plus_noise(300, 200, 3, 0.1, np.random.default_rng(18))
        config = heuristic_config(CurVariant.Linear, 3, 0.5)
        optimal_sq = matrix_core.best_rank_k_error_sq(A, 3)

        def within(seed):
            decomposition = cur_linear_time(A, config, np.random.default_rng(seed))
            return decomposition.diagnostics.residuals["c1"] <= 1620.0 * optimal_sq

        assert_passes_k_of_n(within, n_trials=100, min_successes=60)
