import math

import numpy as np
import pytest

from core.degree import (
    DegreeDistribution,
    RsdParams,
    adaptive_degree_dist,
    reduced_degree_dist,
    reduced_degree_dist_acked,
    redundancy_prob_acked,
    resized_robust_soliton,
    robust_soliton,
    sample_degree,
)
from core.errors import DomainError
from core.utils.utils_test import chi_square_pvalue, ideal_soliton, monte_carlo_reduced, total_variation


@pytest.fixture(scope='module')
def rsd100():
    return robust_soliton(RsdParams(100, 0.1, 1.0))


class TestDegreeDistribution:

    def test_rejects_invalid_pmf(self):
        with pytest.raises(DomainError):
            DegreeDistribution(3, [0.0, 0.5, 0.5])
        with pytest.raises(DomainError):
            DegreeDistribution(2, [0.0, 0.7, 0.7])
        with pytest.raises(DomainError):
            DegreeDistribution(2, [0.0, 1.5, -0.5])

    def test_pmf_is_read_only(self, rsd100):
        with pytest.raises(ValueError):
            rsd100.pmf[1] = 0.5

    def test_truncated_folds_tail(self, rsd100):
        truncated = rsd100.truncated(10)
        assert truncated.k == 10
        assert truncated.pmf[10] == pytest.approx(rsd100.pmf[10:].sum())
        np.testing.assert_array_equal(truncated.pmf[:10], rsd100.pmf[:10])

    def test_padded(self, rsd100):
        padded = rsd100.padded(150)
        assert padded.k == 150
        assert padded.pmf[101:].sum() == 0.0
        with pytest.raises(DomainError):
            rsd100.padded(50)

    def test_sampling_follows_pmf(self, rsd100):
        rng = np.random.default_rng(5)
        draws = [sample_degree(rsd100, rng) for _ in range(50000)]
        assert min(draws) >= 1 and max(draws) <= 100
        assert chi_square_pvalue(np.bincount(draws, minlength=101), rsd100.pmf) > 0.001


class TestRobustSoliton:

    def test_is_a_distribution(self):
        for k in (1, 2, 10, 100, 1000):
            pmf = robust_soliton(RsdParams(k, 0.1, 1.0)).pmf
            assert pmf.sum() == pytest.approx(1.0, abs=1e-12)
            assert pmf[0] == 0.0

    def test_single_symbol_is_point_mass(self):
        np.testing.assert_array_equal(robust_soliton(RsdParams(1, 0.1, 1.0)).pmf, [0.0, 1.0])

    def test_spike(self):
        params = RsdParams(1000, 0.1, 1.0)
        pmf = robust_soliton(params).pmf
        spike = params.spike
        assert params.ripple == pytest.approx(0.1 * np.log(1000) * np.sqrt(1000))
        assert pmf[spike] > pmf[spike - 1] and pmf[spike] > pmf[spike + 1]

    def test_known_values_at_k100(self):
        params = RsdParams(100, 0.1, 1.0)
        # S = 0.1 ln(100) sqrt(100), spike at ceil(100 / S)
        s = 0.1 * math.log(100) * 10
        assert params.ripple == pytest.approx(4.605170, abs=1e-6)
        assert params.spike == 22
        weights = [0.0, 1 / 100] + [1 / (d * (d - 1)) for d in range(2, 101)]
        for d in range(1, 22):
            weights[d] += s / (d * 100)
        weights[22] += s * math.log(s) / 100
        total = sum(weights)
        pmf = robust_soliton(params).pmf
        assert pmf[1] == pytest.approx(weights[1] / total, rel=1e-12)
        assert pmf[1] == pytest.approx(0.045268, abs=1e-5)
        assert pmf[22] == pytest.approx(weights[22] / total, rel=1e-12)
        np.testing.assert_allclose(pmf, np.array(weights) / total, rtol=1e-12, atol=0)

    def test_resized_caps_ripple(self):
        params = RsdParams(100, 0.5, 0.05)
        assert params.ripple < 100
        for k in (2, 5):
            resized = resized_robust_soliton(params, k)
            assert resized.k == k and resized.pmf.sum() == pytest.approx(1.0)
            assert resized.pmf[1] == resized.pmf.max()
        assert resized_robust_soliton(params, 10).pmf.sum() == pytest.approx(1.0)
        np.testing.assert_allclose(resized_robust_soliton(params, 100).pmf, robust_soliton(params).pmf, atol=1e-15)
        np.testing.assert_allclose(resized_robust_soliton(RsdParams(100, 0.1, 1.0), 40).pmf,
                                   robust_soliton(RsdParams(40, 0.1, 1.0)).pmf, atol=1e-15)

    def test_mass_over_ideal_soliton(self):
        ideal = ideal_soliton(100)
        assert ideal.pmf.sum() == pytest.approx(1.0)
        robust = robust_soliton(RsdParams(100, 0.1, 1.0))
        assert robust.pmf[1] > ideal.pmf[1]

    @pytest.mark.parametrize('k,c,delta', [(0, 0.1, 1.0), (100, 0.0, 1.0), (100, 0.1, 1.5), (100, 5.0, 0.01)])
    def test_rejects_bad_parameters(self, k, c, delta):
        with pytest.raises(DomainError):
            RsdParams(k, c, delta)


class TestReducedDegree:

    @pytest.mark.parametrize('L', [10, 25, 50, 75, 100])
    def test_matches_monte_carlo(self, rsd100, L):
        rng = np.random.default_rng(L)
        empirical = monte_carlo_reduced(rsd100, L, 10 ** 6, rng)
        assert total_variation(reduced_degree_dist(rsd100, L).pmf, empirical) < 0.01

    def test_endpoints(self, rsd100):
        np.testing.assert_allclose(reduced_degree_dist(rsd100, 100).pmf, rsd100.pmf, atol=1e-15)
        assert reduced_degree_dist(rsd100, 0).pmf[0] == pytest.approx(1.0)
        assert reduced_degree_dist(rsd100, 100).pmf[0] == 0.0

    def test_support_and_mass(self, rsd100):
        for L in range(0, 101, 7):
            pmf = reduced_degree_dist(rsd100, L).pmf
            assert pmf.sum() == pytest.approx(1.0, abs=1e-10)
            assert np.all(pmf[L + 1:] == 0)

    def test_redundancy_grows_as_symbols_decode(self, rsd100):
        redundancy = [reduced_degree_dist(rsd100, L).pmf[0] for L in range(100, -1, -1)]
        assert np.all(np.diff(redundancy) >= -1e-12)

    def test_rejects_bad_L(self, rsd100):
        with pytest.raises(DomainError):
            reduced_degree_dist(rsd100, 101)
        with pytest.raises(DomainError):
            reduced_degree_dist(rsd100, -1)


class TestAcked:

    @pytest.mark.parametrize('L', [1, 10, 50, 90])
    def test_redundancy_strictly_decreases_with_acks(self, rsd100, L):
        values = [redundancy_prob_acked(rsd100, L, M) for M in range(100 - L + 1)]
        assert np.all(np.diff(values) < 0)
        assert values[-1] == pytest.approx(0.0, abs=1e-15)

    def test_no_acks_is_plain_reduction(self, rsd100):
        for L in (5, 40, 80):
            assert redundancy_prob_acked(rsd100, L, 0) == pytest.approx(reduced_degree_dist(rsd100, L).pmf[0],
                                                                        abs=1e-14)
            np.testing.assert_allclose(reduced_degree_dist_acked(rsd100, L, 0).pmf,
                                       reduced_degree_dist(rsd100, L).pmf, atol=1e-14)

    def test_full_acks_reproduce_the_encoder_distribution(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            k = int(rng.integers(2, 501))
            L = int(rng.integers(1, k + 1))
            original = robust_soliton(RsdParams(k, 0.1, 1.0))
            acked = reduced_degree_dist_acked(original, L, k - L)
            np.testing.assert_allclose(acked.pmf, original.truncated(L).padded(k).pmf, rtol=0, atol=1e-12)
            over_remaining = robust_soliton(RsdParams(L, 0.1, 1.0)).padded(k)
            np.testing.assert_allclose(reduced_degree_dist_acked(over_remaining, L, k - L).pmf,
                                       over_remaining.pmf, rtol=0, atol=1e-12)

    @pytest.mark.parametrize('L,M', [(20, 30), (50, 10), (5, 90)])
    def test_matches_monte_carlo(self, rsd100, L, M):
        rng = np.random.default_rng(L + M)
        empirical = monte_carlo_reduced(rsd100, L, 10 ** 6, rng, acked=M)
        assert total_variation(reduced_degree_dist_acked(rsd100, L, M).pmf, empirical) < 0.01
        assert redundancy_prob_acked(rsd100, L, M) == pytest.approx(empirical[0], abs=0.005)

    def test_rejects_too_many_acks(self, rsd100):
        with pytest.raises(DomainError):
            redundancy_prob_acked(rsd100, 50, 51)
        with pytest.raises(DomainError):
            reduced_degree_dist_acked(rsd100, 50, -1)


class TestAdaptive:

    @pytest.mark.parametrize('L', [1, 2, 17, 40, 99])
    def test_is_renormalised_reduction(self, rsd100, L):
        rho = adaptive_degree_dist(rsd100, L)
        reduced = reduced_degree_dist(rsd100, L).pmf
        assert rho.k == L
        assert rho.pmf[0] == 0.0
        np.testing.assert_allclose(rho.pmf[1:], reduced[1:L + 1] / (1 - reduced[0]), rtol=0, atol=1e-12)

    def test_nothing_decoded_is_original(self, rsd100):
        np.testing.assert_allclose(adaptive_degree_dist(rsd100, 100).pmf, rsd100.pmf, atol=1e-15)

    def test_rejects_bad_L(self, rsd100):
        with pytest.raises(DomainError):
            adaptive_degree_dist(rsd100, 0)
