import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.linalg import adaptive
from src.linalg import matrix_core
from src.linalg.pairwise_hash_family import PairwiseHashFamily, smallest_prime_at_least
from src.linalg.dataclasses_and_types import CurArgumentError, DiscreteDistribution
from src.linalg import subspace_approx
from src.harness import exact_rank, low_rank_plus_noise

from tests.helpers.statistical_tolerance import assert_passes_k_of_n, assert_mean_within_standard_errors


def residual_column_probabilities(A, V):
    residual = A - V @ np.linalg.pinv(V) @ A
    energies = np.sum(residual ** 2, axis=0)
    return energies / energies.sum()


def column_sampling_error(A, V, selection, k):
    C = np.hstack([V, A[:, selection.indices]])
    return subspace_approx.column_space_rank_k_residual_sq(A, C, k)


def row_sampling_error(A, V, R1, selection):
    R = np.vstack([R1, A[selection.indices]])
    projected = V @ np.linalg.pinv(V) @ A
    return matrix_core.frobenius_sq(A - projected @ np.linalg.pinv(R) @ R)


class TestAdaptiveColumns:

    def test_distribution_follows_residual(self):
        rng = np.random.default_rng(0)
        A = rng.standard_normal((15, 12))
        V = A[:, :3]

        selection = adaptive.adaptive_cols(A, V, 1.0, 5, rng)

        np.testing.assert_allclose(selection.distribution.probabilities, residual_column_probabilities(A, V),
                                   atol=1e-12)
        assert selection.indices.shape == (5,)
        assert not np.isin(selection.indices, [0, 1, 2]).any()

    def test_zero_residual_falls_back_to_uniform(self):
        A = exact_rank(10, 8, 2, np.random.default_rng(1))
        selection = adaptive.adaptive_cols(A, A[:, :2], 1.0, 3, np.random.default_rng(0))

        assert selection.distribution.uniform_fallback
        np.testing.assert_allclose(selection.distribution.probabilities, np.full(8, 1.0 / 8))

    def test_supplied_probabilities_below_floor(self):
        rng = np.random.default_rng(2)
        A = rng.standard_normal((10, 6))
        A[:, 0] *= 100.0

        with pytest.raises(CurArgumentError, match="floor"):
            adaptive.adaptive_cols(A, A[:, 1:2], 1.0, 2, rng, probabilities=np.full(6, 1.0 / 6))

    def test_argument_checks(self):
        A = np.eye(4)
        with pytest.raises(CurArgumentError, match="alpha"):
            adaptive.adaptive_cols(A, A[:, :1], 0.0, 2, np.random.default_rng(0))
        with pytest.raises(CurArgumentError, match="c2"):
            adaptive.adaptive_cols(A, A[:, :1], 1.0, 0, np.random.default_rng(0))

    def test_sketched_distribution_keeps_floor(self):
        rng = np.random.default_rng(3)
        A = rng.standard_normal((60, 50))
        V = A[:, :3]
        exact = residual_column_probabilities(A, V)

        def above_floor(seed):
            selection = adaptive.adaptive_cols_sparse(A, V, 4, np.random.default_rng(seed))
            return bool(np.all(selection.distribution.probabilities >= adaptive.SKETCHED_FLOOR * exact - 1e-12))

        assert_passes_k_of_n(above_floor, n_trials=100, min_successes=99)

    @pytest.mark.parametrize("sketched", [False, True])
    def test_expected_error_bound(self, sketched):
        A = low_rank_plus_noise(60, 50, 3, 0.3, np.random.default_rng(20))
        k, c2 = 3, 6
        V = A[:, :3]
        alpha = adaptive.SKETCHED_FLOOR if sketched else 1.0

        tail = matrix_core.best_rank_k_error_sq(A, k)
        residual = matrix_core.projection_residual_sq(A, V)
        bound = tail + k / (alpha * c2) * residual

        def error(seed):
            rng = np.random.default_rng(seed)
            if sketched:
                selection = adaptive.adaptive_cols_sparse(A, V, c2, rng)
            else:
                selection = adaptive.adaptive_cols(A, V, 1.0, c2, rng)
            return column_sampling_error(A, V, selection, k)

        assert_mean_within_standard_errors([error(seed) for seed in range(200)], bound)


class TestAdaptiveRows:

    def test_distribution_follows_row_residual(self):
        rng = np.random.default_rng(4)
        A = rng.standard_normal((12, 9))
        R1 = A[:2]

        selection = adaptive.adaptive_rows(A, A[:, :3], R1, 4, rng)

        residual = A - A @ np.linalg.pinv(R1) @ R1
        energies = np.sum(residual ** 2, axis=1)
        np.testing.assert_allclose(selection.distribution.probabilities, energies / energies.sum(), atol=1e-12)

    def test_rejects_mismatched_column_space(self):
        A = np.eye(5)
        with pytest.raises(CurArgumentError, match="rows"):
            adaptive.adaptive_rows(A, np.ones((4, 1)), A[:1], 2, np.random.default_rng(0))

    def test_sketched_distribution_keeps_floor(self):
        rng = np.random.default_rng(5)
        A = rng.standard_normal((50, 40))
        R1 = A[:3]
        residual = A - A @ np.linalg.pinv(R1) @ R1
        energies = np.sum(residual ** 2, axis=1)
        exact = energies / energies.sum()

        def above_floor(seed):
            selection = adaptive.adaptive_rows_sparse(A, A[:, :3], R1, 4, np.random.default_rng(seed))
            return bool(np.all(selection.distribution.probabilities >= adaptive.SKETCHED_FLOOR * exact - 1e-12))

        assert_passes_k_of_n(above_floor, n_trials=100, min_successes=99)

    @pytest.mark.parametrize("sketched", [False, True])
    def test_expected_error_bound(self, sketched):
        A = low_rank_plus_noise(50, 60, 4, 0.3, np.random.default_rng(21))
        V = A[:, :4]
        R1 = A[:3]
        r2 = 8
        rho = np.linalg.matrix_rank(V)
        alpha = adaptive.SKETCHED_FLOOR if sketched else 1.0

        column_residual = matrix_core.projection_residual_sq(A, V)
        row_residual = matrix_core.frobenius_sq(A - A @ np.linalg.pinv(R1) @ R1)
        bound = column_residual + rho / (alpha * r2) * row_residual

        def error(seed):
            rng = np.random.default_rng(seed)
            if sketched:
                selection = adaptive.adaptive_rows_sparse(A, V, R1, r2, rng)
            else:
                selection = adaptive.adaptive_rows(A, V, R1, r2, rng)
            return row_sampling_error(A, V, R1, selection)

        assert_mean_within_standard_errors([error(seed) for seed in range(200)], bound)


class TestDiscretization:

    @given(st.lists(st.floats(min_value=0.0, max_value=1e6, allow_nan=False), min_size=1, max_size=60)
           .filter(lambda values: sum(values) > 0.0))
    @settings(max_examples=200, deadline=None)
    def test_grid_invariants(self, values):
        p = np.array(values) / np.sum(values)
        discrete = adaptive.discretize_distribution(p)

        assert discrete.grid == 4 * p.shape[0]
        assert int(discrete.units.sum()) == discrete.grid
        assert np.all(discrete.units >= 0)
        assert np.all(discrete.q >= p / 4 * (1 - 1e-9))
        assert discrete.q[discrete.i_star] >= 0.25

    def test_uniform_input(self):
        discrete = adaptive.discretize_distribution(np.full(4, 0.25))
        # every index but i* rounds half its mass, i* absorbs the rest
        assert discrete.units.tolist() == [10, 2, 2, 2]

    def test_inverse_cdf(self):
        discrete = DiscreteDistribution(units=np.array([1, 2, 1]), grid=4, i_star=1)
        assert discrete.inverse_cdf(np.arange(4)).tolist() == [0, 1, 1, 2]


class TestPairwiseHashFamily:

    def test_smallest_prime(self):
        assert smallest_prime_at_least(1) == 2
        assert smallest_prime_at_least(48) == 53
        assert smallest_prime_at_least(53) == 53

    def test_pairs_are_hit_exactly_once(self):
        family = PairwiseHashFamily.for_range(7)
        assert family.size == 49

        for x, y in [(0, 1), (2, 5), (6, 3)]:
            images = {(int(family(a, b, x)), int(family(a, b, y))) for a, b in itertools.product(range(7), repeat=2)}
            assert len(images) == 49

    def test_prime_separates_the_domain(self):
        family = PairwiseHashFamily.for_range(4, domain_size=12)
        assert family.prime == 13
        assert PairwiseHashFamily.for_range(20, domain_size=12).prime == 23

        # every pair of distinct points in 1..12 is hit uniformly over the prime field
        raw = PairwiseHashFamily(prime=family.prime, output_range=family.prime)
        for x, y in [(1, 12), (5, 6)]:
            images = {(int(raw(a, b, x)), int(raw(a, b, y))) for a, b in itertools.product(range(13), repeat=2)}
            assert len(images) == 169

    def test_block_matches_members(self):
        family = PairwiseHashFamily.for_range(20)
        points = np.arange(1, 6)

        for a in (0, 3, family.prime - 1):
            block = family.evaluate_block(a, points)
            assert block.shape == (family.prime, 5)
            for b in range(family.prime):
                assert np.array_equal(block[b], family(a, b, points))
            assert np.all(block < 20)


class TestDerandomizedSampling:

    def test_objective_matches_direct_formula(self):
        rng = np.random.default_rng(6)
        A = rng.standard_normal((9, 7))
        V, R = A[:, :2], A[:3]

        direct = matrix_core.frobenius_sq(A - V @ np.linalg.pinv(V) @ A @ np.linalg.pinv(R) @ R)
        assert adaptive.adaptive_rows_objective(A, V, R) == pytest.approx(direct, rel=1e-9)

    def test_row_bound_on_random_matrices(self):
        r1, r2 = 2, 4
        for seed in range(20):
            rng = np.random.default_rng(100 + seed)
            A = rng.standard_normal((12, 10))
            V = rng.standard_normal((12, 2))
            rank = np.linalg.matrix_rank(V)
            R1 = A[:r1]

            rows = adaptive.adaptive_rows_d(A, V, R1, r2)

            assert rows.shape == (r2,)
            value = adaptive.adaptive_rows_objective(A, V, np.vstack([R1, A[rows]]))
            column_residual = matrix_core.frobenius_sq(A - V @ np.linalg.pinv(V) @ A)
            row_residual = matrix_core.frobenius_sq(A - A @ np.linalg.pinv(R1) @ R1)
            assert value <= (column_residual + 4 * rank / r2 * row_residual) * (1 + 1e-9) + 1e-20

    def test_zero_residual_fallback(self):
        A = np.random.default_rng(7).standard_normal((5, 4))
        rows = adaptive.adaptive_rows_d(A, A[:, :2], A, 7)
        assert rows.tolist() == [0, 1, 2, 3, 4, 0, 1]

    def test_column_bound(self):
        k, c2 = 1, 4
        for seed in range(5):
            rng = np.random.default_rng(200 + seed)
            A = rng.standard_normal((12, 10))
            V = A[:, :2]
            factorization = matrix_core.svd(A)
            best = matrix_core.truncate(factorization, k)

            columns = adaptive.adaptive_cols_d(A, V, c2, k, factorization)

            assert columns.shape == (c2,)
            C = np.hstack([V, A[:, columns]])
            value = matrix_core.frobenius_sq(A - C @ np.linalg.pinv(C) @ best)
            bound = factorization.tail_energy(k) + 4 * k / c2 * matrix_core.frobenius_sq(A - V @ np.linalg.pinv(V) @ A)
            assert value <= bound * (1 + 1e-9)

    def test_deterministic(self):
        A = np.random.default_rng(8).standard_normal((10, 8))
        first = adaptive.adaptive_cols_d(A, A[:, :2], 3, 1)
        second = adaptive.adaptive_cols_d(A, A[:, :2], 3, 1)
        assert np.array_equal(first, second)
