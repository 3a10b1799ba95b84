import numpy as np
import pytest
import scipy.sparse as sps
from hypothesis import given, settings, strategies as st

from src.linalg import matrix_core
from src.linalg.dataclasses_and_types import CurArgumentError
from src.harness import sparse_exact_rank


seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=12)


def random_matrix(seed, m, n):
    return np.random.default_rng(seed).uniform(-1.0, 1.0, size=(m, n))


class TestOperands:

    def test_rejects_vectors(self):
        with pytest.raises(CurArgumentError, match="two-dimensional"):
            matrix_core.as_operand(np.ones(4))

    def test_rejects_non_finite_entries(self):
        with pytest.raises(CurArgumentError, match="non-finite"):
            matrix_core.as_operand(np.array([[1.0, np.nan]]))
        with pytest.raises(CurArgumentError, match="non-finite"):
            matrix_core.as_operand(sps.csr_array(np.array([[np.inf, 0.0]])))

    def test_sparse_input_is_canonicalized(self):
        coordinates = sps.coo_array(([1.0, 2.0, 0.0], ([0, 0, 1], [1, 1, 0])), shape=(2, 2))
        operand = matrix_core.as_operand(coordinates)

        assert matrix_core.is_sparse(operand)
        assert operand.nnz == 1
        assert operand[0, 1] == 3.0
        assert operand.dtype == np.float64

    def test_dense_input_is_float64_c_ordered(self):
        operand = matrix_core.as_operand(np.asfortranarray(np.arange(6).reshape(2, 3)))
        assert operand.dtype == np.float64
        assert operand.flags.c_contiguous


class TestNorms:

    def test_zero_matrix(self):
        zero = np.zeros((3, 4))
        assert matrix_core.frobenius_sq(zero) == 0.0
        assert matrix_core.spectral_norm(zero) == 0.0

    def test_diagonal(self):
        diagonal = np.diag([3.0, 4.0])
        assert matrix_core.frobenius_sq(diagonal) == pytest.approx(25.0)
        assert matrix_core.spectral_norm(diagonal) == pytest.approx(4.0)

    @given(seeds)
    @settings(max_examples=20, deadline=None)
    def test_sparse_and_dense_agree(self, seed):
        dense = sps.random(30, 20, density=0.2, random_state=seed).toarray()
        sparse = sps.csr_array(dense)

        assert matrix_core.frobenius_sq(sparse) == pytest.approx(matrix_core.frobenius_sq(dense), rel=1e-12)
        assert matrix_core.spectral_norm(sparse) == pytest.approx(np.linalg.norm(dense, 2), rel=1e-8)
        np.testing.assert_allclose(matrix_core.row_norms_sq(sparse), matrix_core.row_norms_sq(dense), rtol=1e-12)
        np.testing.assert_allclose(matrix_core.column_norms_sq(sparse), matrix_core.column_norms_sq(dense),
                                   rtol=1e-12)


class TestFactorizations:

    @given(seeds, dims, dims)
    @settings(max_examples=30, deadline=None)
    def test_svd_reconstructs(self, seed, m, n):
        A = random_matrix(seed, m, n)
        factorization = matrix_core.svd(A)
        reconstruction = (factorization.left * factorization.sigma) @ factorization.right.T
        assert np.linalg.norm(A - reconstruction) <= 1e-10 * max(np.linalg.norm(A), 1.0)

    def test_svd_truncates_at_numerical_rank(self):
        rng = np.random.default_rng(3)
        A = rng.standard_normal((20, 3)) @ rng.standard_normal((3, 15))
        assert matrix_core.svd(A).rank == 3
        assert matrix_core.numerical_rank(A) == 3

    @given(seeds, dims, dims)
    @settings(max_examples=30, deadline=None)
    def test_pinv_moore_penrose_conditions(self, seed, m, n):
        A = random_matrix(seed, m, n)
        pinv = matrix_core.pinv(A)
        scale = max(np.linalg.norm(A), 1.0)

        assert np.linalg.norm(A @ pinv @ A - A) <= 1e-9 * scale
        assert np.linalg.norm(pinv @ A @ pinv - pinv) <= 1e-9 * max(np.linalg.norm(pinv), 1.0)
        assert np.allclose(A @ pinv, (A @ pinv).T, atol=1e-9)
        assert np.allclose(pinv @ A, (pinv @ A).T, atol=1e-9)

    def test_pinv_of_zero_is_zero(self):
        assert np.array_equal(matrix_core.pinv(np.zeros((3, 2))), np.zeros((2, 3)))

    @given(seeds, st.integers(min_value=2, max_value=12), st.integers(min_value=2, max_value=12),
           st.integers(min_value=1, max_value=4))
    @settings(max_examples=30, deadline=None)
    def test_truncate_error_equals_tail_energy(self, seed, m, n, k):
        A = random_matrix(seed, m, n)
        factorization = matrix_core.svd(A)
        error = matrix_core.frobenius_sq(A - matrix_core.truncate(factorization, k))
        assert error == pytest.approx(factorization.tail_energy(k), rel=1e-8, abs=1e-20)

    def test_truncate_beyond_rank_returns_input(self):
        A = np.diag([2.0, 1.0, 0.0])
        np.testing.assert_allclose(matrix_core.truncate(matrix_core.svd(A), 5), A, atol=1e-15)

    def test_truncate_rejects_zero_rank(self):
        with pytest.raises(CurArgumentError):
            matrix_core.truncate(matrix_core.svd(np.eye(2)), 0)

    @given(seeds, st.integers(min_value=1, max_value=8))
    @settings(max_examples=20, deadline=None)
    def test_qr_reconstructs(self, seed, c):
        A = random_matrix(seed, 10, c)
        factorization = matrix_core.qr(A)

        np.testing.assert_allclose(factorization.q @ factorization.r, A, atol=1e-10)
        np.testing.assert_allclose(factorization.q.T @ factorization.q, np.eye(c), atol=1e-10)
        assert np.allclose(np.tril(factorization.r, -1), 0.0)

    def test_qr_requires_tall_input(self):
        with pytest.raises(CurArgumentError, match="at least as many rows"):
            matrix_core.qr(np.ones((2, 3)))


class TestResiduals:

    def test_projection_residual_on_spanning_columns_is_zero(self):
        rng = np.random.default_rng(0)
        A = rng.standard_normal((10, 2)) @ rng.standard_normal((2, 8))
        assert matrix_core.projection_residual_sq(A, A[:, :2]) <= 1e-20 * matrix_core.frobenius_sq(A)

    def test_projection_residual_sparse_matches_dense(self):
        dense = sps.random(40, 30, density=0.1, random_state=5).toarray()
        V = dense[:, :6]
        assert matrix_core.projection_residual_sq(sps.csr_array(dense), V) == pytest.approx(
            matrix_core.projection_residual_sq(dense, V), rel=1e-9
        )

    def test_best_rank_k_error_sparse_matches_dense(self):
        dense = sps.random(30, 20, density=0.3, random_state=7).toarray()
        expected = matrix_core.svd(dense).tail_energy(3)
        assert matrix_core.best_rank_k_error_sq(sps.csr_array(dense), 3) == pytest.approx(expected, rel=1e-6)

    @pytest.mark.parametrize("seed", range(5))
    def test_best_rank_k_error_of_sparse_exact_rank_is_zero(self, seed):
        A = sparse_exact_rank(300, 250, 3, 0.02, np.random.default_rng(seed))

        assert matrix_core.best_rank_k_error_sq(A, 3) == 0.0
        assert matrix_core.best_rank_k_error_sq(A, 2) > 0.0


class TestDenseAllocationAudit:

    def test_flags_full_size_densification_only(self):
        sparse = sps.csr_array(sps.random(20, 10, density=0.2, random_state=1))

        with matrix_core.DenseAllocationAudit(sparse.shape) as audit:
            matrix_core.select_columns(sparse, np.array([0, 1]))
            assert not audit.violations

            matrix_core.to_dense(sparse, label="whole matrix")

        assert audit.violations == [("whole matrix", (20, 10))]

    def test_inactive_outside_context(self):
        sparse = sps.csr_array(np.eye(3))
        with matrix_core.DenseAllocationAudit(sparse.shape) as audit:
            pass
        matrix_core.to_dense(sparse)
        assert audit.records == []

    def test_dense_operands_are_not_recorded(self):
        with matrix_core.DenseAllocationAudit((3, 3)) as audit:
            matrix_core.to_dense(np.eye(3))
        assert audit.records == []
