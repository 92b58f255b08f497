import math

import numpy as np
import pytest

from nighedge import SimConfig, nig_char, sample_ig, simulate_path


class TestSampleIg:
    def test_moment_check(self):
        # IG(mean, shape) has variance mean^3/shape
        mean, shape, n = 2.0, 3.0, 1_000_000
        rng = np.random.default_rng(123)
        draws = np.fromiter(
            (sample_ig(mean, shape, rng) for _ in range(n)), dtype=float, count=n
        )
        stderr = math.sqrt(mean**3 / shape / n)
        assert abs(draws.mean() - mean) < 3.0 * stderr

    def test_support_and_validation(self):
        rng = np.random.default_rng(1)
        assert all(sample_ig(0.5, 2.0, rng) > 0.0 for _ in range(1000))
        with pytest.raises(ValueError):
            sample_ig(0.0, 1.0, rng)
        with pytest.raises(ValueError):
            sample_ig(1.0, -1.0, rng)

    def test_deterministic_given_state(self):
        first = [sample_ig(1.0, 1.0, np.random.default_rng(42)) for _ in range(1)]
        again = [sample_ig(1.0, 1.0, np.random.default_rng(42)) for _ in range(1)]
        assert first == again
        rng = np.random.default_rng(7)
        seq = [sample_ig(1.0, 2.0, rng) for _ in range(5)]
        rng = np.random.default_rng(7)
        assert seq == [sample_ig(1.0, 2.0, rng) for _ in range(5)]


class TestSimulatePath:
    def test_config_validation(self, spx_params):
        with pytest.raises(ValueError):
            SimConfig(spx_params, -1.0, 10, 1.0, 0)
        with pytest.raises(ValueError):
            SimConfig(spx_params, 100.0, 0, 1.0, 0)
        with pytest.raises(ValueError):
            SimConfig(spx_params, 100.0, 10, 0.0, 0)

    def test_grid_and_positivity(self, spx_params):
        path = simulate_path(SimConfig(spx_params, 2300.0, 250, 1.0, seed=11))
        assert len(path) == 251
        assert path.times[0] == 0.0 and path.times[-1] == 1.0
        assert np.all(path.prices > 0.0)
        assert path.prices[0] == 2300.0

    def test_bitwise_reproducible(self, spx_params):
        cfg = SimConfig(spx_params, 2300.0, 100, 1.0, seed=99)
        a, b = simulate_path(cfg), simulate_path(cfg)
        assert np.array_equal(a.prices, b.prices)
        assert np.array_equal(a.times, b.times)

    def test_seed_changes_path(self, spx_params):
        a = simulate_path(SimConfig(spx_params, 2300.0, 100, 1.0, seed=1))
        b = simulate_path(SimConfig(spx_params, 2300.0, 100, 1.0, seed=2))
        assert not np.array_equal(a.prices, b.prices)

    def test_unit_time_moments(self, spx_params):
        # mean and variance of L_1 against the cumulants of the closed-form
        # characteristic function (loose 4-sigma Monte Carlo gates)
        p = spx_params
        gamma = math.sqrt(p.alpha**2 - p.beta**2)
        mean_th = p.delta * p.beta / gamma
        var_th = p.delta * p.alpha**2 / gamma**3
        path = simulate_path(SimConfig(p, 1.0, 20_000, 20_000.0, seed=321))
        increments = np.diff(np.log(path.prices))
        n = increments.size
        assert abs(increments.mean() - mean_th) < 4.0 * math.sqrt(var_th / n)
        assert abs(increments.var() - var_th) < 4.0 * var_th * math.sqrt(2.0 / n)

    def test_empirical_char_fn(self, spx_params):
        # unit-time increments over disjoint intervals are iid copies of L_1
        blocks = [
            np.diff(np.log(simulate_path(
                SimConfig(spx_params, 1.0, 1000, 1000.0, seed=5000 + i)
            ).prices))
            for i in range(20)
        ]
        sample = np.concatenate(blocks)
        for z in (1.0, -2.0):
            empirical = np.mean(np.exp(1j * z * sample))
            assert abs(empirical - nig_char(z, spx_params)) < 0.02
