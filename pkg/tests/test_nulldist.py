import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import norm

from fastdcor import (
    DegenerateDataError,
    InvalidInputError,
    NullSpectrum,
    centered_chisq_cdf,
    dominance_level,
    normal_dominance_level,
    simulate_null,
    spectrum,
    tail_crossing,
)


def ks_distance(values, cdf):
    v = np.sort(values)
    grid = np.linspace(v[0], v[-1], 4000)
    ecdf = np.searchsorted(v, grid, side="right") / v.size
    return float(np.abs(ecdf - cdf(grid)).max())


def test_centered_chisq_cdf_support_boundary():
    assert centered_chisq_cdf(-1.0, 1) == 0.0
    assert centered_chisq_cdf(-1.5, 1) == 0.0


def test_centered_chisq_cdf_critical_value():
    assert centered_chisq_cdf(2.8415, 1) == pytest.approx(0.95, abs=1e-4)


def test_centered_chisq_cdf_normal_limit():
    # (chi2_m - m)/sqrt(m) tends to N(0, 2)
    for x in (-1.0, 0.0, 1.0, 2.5):
        big = centered_chisq_cdf(x, 10_000)
        assert big == pytest.approx(norm.cdf(x, scale=np.sqrt(2)), abs=0.01)


def test_centered_chisq_cdf_rejects_degree_zero():
    with pytest.raises(InvalidInputError):
        centered_chisq_cdf(0.0, 0)


def test_tail_crossing_small_degree():
    assert tail_crossing(2) == pytest.approx(2.7, abs=0.1)


def test_tail_crossing_decreases_with_degree():
    points = [tail_crossing(m) for m in (2, 3, 10, 100)]
    assert all(a > b for a, b in zip(points, points[1:]))


def test_tail_crossing_rejects_degree_one():
    with pytest.raises(InvalidInputError):
        tail_crossing(1)


def test_normal_dominance_level_value():
    assert normal_dominance_level() == pytest.approx(0.0875, abs=0.005)


def test_normal_dominates_at_five_percent():
    # at the 0.95 quantile of chi2_1 - 1 the normal CDF is already above 0.95
    x = 2.8415
    assert norm.cdf(x, scale=np.sqrt(2)) >= 0.95


def test_dominance_level_identity_is_range_bound():
    assert dominance_level(lambda t: centered_chisq_cdf(t, 1)) == 1.0


def test_spectrum_binary_sample_single_eigenvalue():
    rng = np.random.default_rng(0)
    x = rng.integers(0, 2, 150).astype(float)
    y = rng.standard_normal(150)
    s = spectrum(x, y)
    assert s.lam.size == 1


def test_spectrum_binary_pair_unit_weight():
    rng = np.random.default_rng(1)
    x = rng.integers(0, 2, 120).astype(float)
    y = rng.integers(0, 2, 120).astype(float)
    s = spectrum(x, y)
    assert s.weights.shape == (1, 1)
    assert s.weights[0, 0] == pytest.approx(1.0, abs=1e-12)


def test_spectrum_constant_sample_degenerate():
    y = np.random.default_rng(2).standard_normal(30)
    s = spectrum(np.full(30, 4.0), y)
    assert s.degenerate
    assert s.lam.size == 0


def test_spectrum_rejects_small_samples():
    with pytest.raises(InvalidInputError):
        spectrum(np.ones(3), np.ones(3))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(5, 60), st.integers(1, 3))
def test_spectrum_weights_square_sum_to_one(seed, n, d):
    rng = np.random.default_rng(seed)
    s = spectrum(rng.standard_normal((n, d)), rng.standard_normal((n, d)))
    assert (s.weights**2).sum() == pytest.approx(1.0, abs=1e-9)
    assert np.all(s.weights >= 0) and np.all(s.weights <= 1 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6), st.integers(25, 80))
def test_spectrum_rank_bounded_by_distinct_values(seed, m, n):
    rng = np.random.default_rng(seed)
    levels = rng.standard_normal(m) * 3
    x = levels[rng.integers(0, m, n)]
    y = rng.standard_normal(n)
    s = spectrum(x, y)
    assert s.lam.size <= m - 1


def test_simulate_null_single_weight_is_centered_chisq():
    spec = NullSpectrum(np.ones(1), np.ones(1), np.ones((1, 1)), degenerate=False)
    sample = simulate_null(spec, 100_000, seed=3)
    ks = ks_distance(sample.values, lambda t: centered_chisq_cdf(t, 1))
    assert ks < 0.01


def test_simulate_null_equal_weights_matches_higher_degree():
    m = 5
    lam = np.ones(m) / np.sqrt(m)
    spec = NullSpectrum(lam, np.ones(1), np.outer(lam, [1.0]), degenerate=False)
    sample = simulate_null(spec, 100_000, seed=4)
    ks = ks_distance(sample.values, lambda t: centered_chisq_cdf(t, m))
    assert ks < 0.01


def test_simulate_null_moments():
    lam = np.array([1.0, 0.5, 0.25])
    lam /= np.sqrt((lam**2).sum())
    mu = np.array([1.0, 0.3])
    mu /= np.sqrt((mu**2).sum())
    spec = NullSpectrum(lam, mu, np.outer(lam, mu), degenerate=False)
    sample = simulate_null(spec, 1_000_000, seed=6)
    assert abs(sample.values.mean()) <= 0.01
    assert 1.97 <= sample.values.var() <= 2.03


def test_simulate_null_tail_between_normal_and_centered_chisq():
    # weighted nulls from 1D continuous data sit between the two references
    rng = np.random.default_rng(7)
    spec = spectrum(rng.standard_normal(100), rng.standard_normal(100))
    sample = simulate_null(spec, 100_000, seed=8, min_weight=1e-4)
    for prob in (0.95, 0.975, 0.99):
        q = float(np.quantile(sample.values, prob))
        lo = float(norm.ppf(prob, scale=np.sqrt(2)))
        hi = float(np.interp(prob, centered_chisq_cdf(np.linspace(0, 20, 40_001), 1),
                             np.linspace(0, 20, 40_001)))
        assert lo - 0.05 <= q <= hi + 0.05


def test_simulate_null_quantiles_match_reference_law():
    # with a single unit weight the simulated (1 - alpha) quantiles must sit
    # on the analytic chi2_1 - 1 quantiles
    from scipy.stats import chi2

    spec = NullSpectrum(np.ones(1), np.ones(1), np.ones((1, 1)), degenerate=False)
    sample = simulate_null(spec, 1_000_000, seed=10)
    for alpha in (0.01, 0.05, 0.1):
        emp = float(np.quantile(sample.values, 1 - alpha))
        ana = float(chi2.ppf(1 - alpha, 1) - 1)
        assert emp == pytest.approx(ana, abs=0.05)


def test_empirical_null_upper_tail_dominated():
    # the 95th percentile of n * dcor under independence stays below the
    # chi2_1 - 1 critical point (upper-tail dominance)
    from fastdcor import fast_dcor_1d

    n, reps = 100, 10_000
    children = np.random.SeedSequence(55).spawn(reps)
    stats = np.empty(reps)
    for i in range(reps):
        rng = np.random.default_rng(children[i])
        stats[i] = n * fast_dcor_1d(rng.standard_normal(n), rng.standard_normal(n)).dcor
    assert np.quantile(stats, 0.95) <= 2.8415 + 0.1


def test_simulate_null_deterministic():
    spec = NullSpectrum(np.ones(1), np.ones(1), np.ones((1, 1)), degenerate=False)
    a = simulate_null(spec, 1000, seed=9)
    b = simulate_null(spec, 1000, seed=9)
    np.testing.assert_array_equal(a.values, b.values)


def test_simulate_null_degenerate_raises():
    spec = NullSpectrum(np.empty(0), np.empty(0), np.empty((0, 0)), degenerate=True)
    with pytest.raises(DegenerateDataError):
        simulate_null(spec, 100)
    good = NullSpectrum(np.ones(1), np.ones(1), np.ones((1, 1)), degenerate=False)
    with pytest.raises(InvalidInputError):
        simulate_null(good, 0)
