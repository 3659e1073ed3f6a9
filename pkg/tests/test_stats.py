import numpy as np
import pytest
from scipy.special import ndtri  # inverse normal, used only to build test inputs

from entropia import DomainError, histogram, ks_statistic, normal_cdf


class TestNormalCdf:
    def test_symmetry_point(self):
        assert normal_cdf(0.0) == 0.5

    def test_196(self):
        # frozen from scipy.special.ndtr(1.96)
        assert normal_cdf(1.96) == pytest.approx(0.9750021048517795, abs=1e-12)

    def test_far_left_tail(self):
        assert normal_cdf(-8.0) < 1e-14

    def test_symmetry_grid(self):
        for z in np.linspace(-6, 6, 121):
            assert normal_cdf(z) + normal_cdf(-z) == pytest.approx(1.0, abs=1e-12)

    def test_monotone(self):
        grid = [normal_cdf(z) for z in np.linspace(-10, 10, 201)]
        assert all(b >= a for a, b in zip(grid, grid[1:]))

    def test_against_scipy_grid(self):
        from scipy.special import ndtr

        for z in np.linspace(-5, 5, 41):
            assert normal_cdf(z) == pytest.approx(float(ndtr(z)), abs=1e-10)

    def test_nonfinite_rejected(self):
        with pytest.raises(DomainError):
            normal_cdf(float("nan"))


class TestKsStatistic:
    def test_exact_quantiles_are_close(self):
        n = 100
        sample = ndtri((np.arange(1, n + 1) - 0.5) / n)
        assert ks_statistic(sample, normal_cdf) <= 0.005 + 1e-12

    def test_constant_sample(self):
        assert ks_statistic([0.0, 0.0, 0.0], normal_cdf) == pytest.approx(0.5)

    def test_single_point_at_median(self):
        assert ks_statistic([0.0], normal_cdf) == pytest.approx(0.5)

    def test_unit_interval(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            sample = rng.normal(size=rng.integers(1, 50))
            assert 0.0 <= ks_statistic(sample, normal_cdf) <= 1.0

    def test_duplicate_heavy_sample_recomputes_exactly(self):
        sample = [1.0] * 7 + [-1.0] * 3
        d = ks_statistic(sample, normal_cdf)
        # empirical CDF jumps 0 -> 0.3 at -1 and 0.3 -> 1.0 at +1
        expected = max(
            normal_cdf(-1.0),
            0.3 - normal_cdf(-1.0),
            normal_cdf(1.0) - 0.3,
            1.0 - normal_cdf(1.0),
        )
        assert d == pytest.approx(expected, abs=1e-15)

    def test_empty_sample_rejected(self):
        with pytest.raises(DomainError):
            ks_statistic([], normal_cdf)


class TestHistogram:
    def test_two_bins(self):
        h = histogram([1.0, 2.0, 3.0, 4.0], bins=2)
        assert h.counts.tolist() == [2, 2]

    def test_all_equal_sample(self):
        h = histogram([5.0, 5.0, 5.0], bins=4)
        assert h.counts.sum() == 3
        assert np.count_nonzero(h.counts) == 1

    def test_counts_sum_to_sample_size(self):
        rng = np.random.default_rng(9)
        sample = rng.normal(size=10**4)
        h = histogram(sample, bins=20)
        assert h.counts.sum() == 10**4
        assert len(h.edges) == 21
        assert np.all(np.diff(h.edges) > 0)

    def test_right_edge_inclusive(self):
        h = histogram([0.0, 1.0], bins=2)
        assert h.counts.tolist() == [1, 1]

    def test_errors(self):
        with pytest.raises(DomainError):
            histogram([], bins=2)
        with pytest.raises(DomainError):
            histogram([1.0], bins=0)
