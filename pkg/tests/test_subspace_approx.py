import numpy as np
import pytest
import scipy.sparse as sps

from src.linalg import subspace_approx
from src.linalg import matrix_core
from src.linalg.dataclasses_and_types import ConditioningError, CurArgumentError
from src.harness import exact_rank

from tests.helpers.statistical_tolerance import assert_passes_k_of_n


def projection_residual(A, factor):
    return matrix_core.frobenius_sq(A - factor.project(A))


class TestBestSubspaceSvd:

    def test_whole_column_space_gives_best_rank_k(self):
        A = np.random.default_rng(0).standard_normal((20, 15))
        factor = subspace_approx.best_subspace_svd(A, A, 3)

        assert projection_residual(A, factor) == pytest.approx(matrix_core.best_rank_k_error_sq(A, 3), rel=1e-9)

    def test_orthonormal_v_with_full_width(self):
        rng = np.random.default_rng(1)
        A = rng.standard_normal((12, 9))
        V = np.linalg.qr(rng.standard_normal((12, 4)))[0]

        factor = subspace_approx.best_subspace_svd(A, V, 4)

        np.testing.assert_allclose(factor.project(A), V @ V.T @ A, atol=1e-10)

    def test_factor_structure(self):
        rng = np.random.default_rng(2)
        A = rng.standard_normal((30, 25))
        V = A[:, :6]

        factor = subspace_approx.best_subspace_svd(A, V, 2)

        assert factor.full_rank
        assert factor.k == 2
        np.testing.assert_allclose(factor.y @ factor.psi, V, atol=1e-10)
        np.testing.assert_allclose(factor.delta.T @ factor.delta, np.eye(2), atol=1e-10)
        np.testing.assert_allclose(factor.invert_psi() @ factor.psi, np.eye(6), atol=1e-8)

    def test_rank_deficient_columns(self):
        rng = np.random.default_rng(3)
        A = rng.standard_normal((15, 10))
        V = np.hstack([A[:, :3], A[:, :3]])

        factor = subspace_approx.best_subspace_svd(A, V, 2)

        assert not factor.full_rank
        assert factor.y.shape == (15, 3)
        np.testing.assert_allclose(factor.y @ factor.psi, V, atol=1e-10)
        np.testing.assert_allclose(factor.psi @ factor.apply_psi_inverse(np.eye(3)), np.eye(3), atol=1e-8)
        with pytest.raises(ConditioningError):
            factor.invert_psi()

    def test_beats_plain_truncation(self):
        rng = np.random.default_rng(4)
        A = rng.standard_normal((25, 20))
        V = A[:, :8]

        factor = subspace_approx.best_subspace_svd(A, V, 3)
        naive = np.linalg.svd(V, full_matrices=False)[0][:, :3]

        assert projection_residual(A, factor) <= matrix_core.frobenius_sq(A - naive @ naive.T @ A) * (1 + 1e-12)

    def test_argument_checks(self):
        with pytest.raises(CurArgumentError, match="rows"):
            subspace_approx.best_subspace_svd(np.eye(4), np.ones((3, 1)), 1)
        with pytest.raises(CurArgumentError, match="k must"):
            subspace_approx.best_subspace_svd(np.eye(4), np.ones((4, 1)), 0)


class TestColumnSpaceResidual:

    def test_spanning_columns_give_tail_energy(self):
        A = np.random.default_rng(5).standard_normal((10, 14))
        assert subspace_approx.column_space_rank_k_residual_sq(A, A[:, :10], 4) == pytest.approx(
            matrix_core.best_rank_k_error_sq(A, 4), rel=1e-9
        )

    def test_sparse_matches_dense(self):
        dense = sps.random(40, 30, density=0.2, random_state=6).toarray()
        C = dense[:, :8]
        assert subspace_approx.column_space_rank_k_residual_sq(sps.csr_array(dense), C, 3) == pytest.approx(
            subspace_approx.column_space_rank_k_residual_sq(dense, C, 3), rel=1e-8
        )


class TestApproxSubspaceSvd:

    def test_exact_rank(self):
        A = exact_rank(60, 50, 3, np.random.default_rng(7))
        factor = subspace_approx.approx_subspace_svd(A, A[:, :3], 3, 0.5, np.random.default_rng(0))

        assert projection_residual(A, factor) <= 1e-18 * matrix_core.frobenius_sq(A)
        np.testing.assert_allclose(factor.delta.T @ factor.delta, np.eye(3), atol=1e-10)

    def test_near_optimal_within_span(self):
        rng = np.random.default_rng(8)
        A = rng.standard_normal((100, 80))
        V = A[:, :10]
        epsilon = 0.5
        optimum = projection_residual(A, subspace_approx.best_subspace_svd(A, V, 3))

        def near_optimal(seed):
            factor = subspace_approx.approx_subspace_svd(A, V, 3, epsilon, np.random.default_rng(seed))
            return projection_residual(A, factor) <= (1 + epsilon) * optimum

        assert_passes_k_of_n(near_optimal, n_trials=50, min_successes=45)

    def test_sparse_input(self):
        A = sps.csr_array(sps.random(80, 60, density=0.1, random_state=9))
        V = A[:, :5].toarray()

        factor = subspace_approx.approx_subspace_svd(A, V, 2, 1.0, np.random.default_rng(0))

        assert factor.basis.shape == (80, 2)

    def test_epsilon_range(self):
        with pytest.raises(CurArgumentError, match="epsilon"):
            subspace_approx.approx_subspace_svd(np.eye(4), np.eye(4)[:, :2], 1, 0.0, np.random.default_rng(0))


class TestRankConstrainedU:

    def test_square_invertible_recovers_truncation(self):
        rng = np.random.default_rng(10)
        A = rng.standard_normal((6, 6))

        U = subspace_approx.rank_constrained_u(A, A, A, 2)

        assert np.linalg.matrix_rank(U) <= 2
        assert matrix_core.frobenius_sq(A - A @ U @ A) == pytest.approx(matrix_core.best_rank_k_error_sq(A, 2),
                                                                         rel=1e-8)

    def test_full_rank_inverse(self):
        A = np.random.default_rng(11).standard_normal((5, 5))
        np.testing.assert_allclose(subspace_approx.rank_constrained_u(A, A, A, 5), np.linalg.inv(A), atol=1e-8)

    def test_beats_random_rank_k_cores(self):
        rng = np.random.default_rng(12)
        A = rng.standard_normal((20, 15))
        C, R, k = A[:, :6], A[:5], 2

        U = subspace_approx.rank_constrained_u(A, C, R, k)
        optimum = matrix_core.frobenius_sq(A - C @ U @ R)

        assert np.linalg.matrix_rank(U) <= k
        for _ in range(50):
            candidate = rng.standard_normal((6, k)) @ rng.standard_normal((k, 5))
            assert optimum <= matrix_core.frobenius_sq(A - C @ candidate @ R)

    def test_rank_range(self):
        A = np.eye(4)
        with pytest.raises(CurArgumentError, match="min"):
            subspace_approx.rank_constrained_u(A, A[:, :2], A[:3], 3)
