import math

import numpy as np
import pytest

from driftrecords import (
    LdmConfig,
    SimulationConfig,
    mc_clt_sample,
    mc_record_rate,
    mc_total_records,
    parse_spec,
    replication_rng,
    simulate_ldm,
)


def ldm(spec, c, delta):
    return LdmConfig(parse_spec(spec), c=c, delta=delta)


def config(spec, c, delta, n, reps, seed=0, burn_in=0):
    return SimulationConfig(
        ldm=ldm(spec, c, delta), n=n, replications=reps, seed=seed, burn_in=burn_in
    )


class TestPathGeneration:
    def test_repeating_a_seed_repeats_the_path(self):
        cfg = ldm("gumbel", 0.5, 0.0)
        a = simulate_ldm(cfg, 50, replication_rng(9, 0))
        b = simulate_ldm(cfg, 50, replication_rng(9, 0))
        np.testing.assert_array_equal(a, b)
        c = simulate_ldm(cfg, 50, replication_rng(9, 1))
        assert not np.array_equal(a, c)

    def test_zero_trend_reduces_to_plain_noise(self):
        cfg = ldm("uniform", 0.0, 0.0)
        path = simulate_ldm(cfg, 10_000, replication_rng(3, 0))
        assert path.min() >= 0.0 and path.max() <= 1.0
        assert path.mean() == pytest.approx(0.5, abs=0.02)

    def test_strong_trend_dominates_bounded_noise(self):
        cfg = ldm("uniform", 5.0, 0.0)
        path = simulate_ldm(cfg, 200, replication_rng(4, 0))
        assert np.all(np.diff(path) > 0.0)

    def test_trend_enters_linearly(self):
        base = simulate_ldm(ldm("normal", 0.0, 0.0), 20, replication_rng(11, 0))
        drifted = simulate_ldm(ldm("normal", 2.0, 0.0), 20, replication_rng(11, 0))
        np.testing.assert_allclose(
            drifted - base, 2.0 * np.arange(1, 21), rtol=0, atol=1e-12
        )

    def test_rejects_empty_horizon(self):
        with pytest.raises(ValueError):
            simulate_ldm(ldm("gumbel", 0.0, 0.0), 0, replication_rng(0, 0))


class TestConfigValidation:
    def test_rejects_bad_horizon(self):
        with pytest.raises(ValueError):
            config("gumbel", 0.0, 0.0, 0, 10)

    def test_rejects_bad_replications(self):
        with pytest.raises(ValueError):
            config("gumbel", 0.0, 0.0, 10, 0)

    def test_rejects_negative_burn_in(self):
        with pytest.raises(ValueError):
            config("gumbel", 0.0, 0.0, 10, 10, burn_in=-1)


class TestRecordRate:
    def test_same_seed_is_bit_reproducible(self):
        a = mc_record_rate(config("gumbel", 0.3, 0.1, 500, 40, seed=12))
        b = mc_record_rate(config("gumbel", 0.3, 0.1, 500, 40, seed=12))
        np.testing.assert_array_equal(a.counts, b.counts)
        assert a.mean_rate == b.mean_rate
        assert a.rate_stderr == b.rate_stderr

    def test_worker_count_does_not_change_results(self):
        cfg = config("normal", 0.2, -0.1, 400, 64, seed=7)
        serial = mc_record_rate(cfg, workers=1)
        threaded = mc_record_rate(cfg, workers=4)
        np.testing.assert_array_equal(serial.counts, threaded.counts)
        np.testing.assert_array_equal(serial.standardized, threaded.standardized)
        assert serial.stabilization_fraction == threaded.stabilization_fraction

    def test_summary_invariants(self):
        s = mc_record_rate(config("exp", 0.1, 0.5, 300, 50, seed=1))
        assert np.all(s.counts >= 1)
        assert 0.0 < s.mean_rate <= 1.0
        assert 0.0 <= s.stabilization_fraction <= 1.0
        assert s.standardized.shape == (50,)
        # standardized sample is centered on the sample mean by definition
        assert s.standardized.mean() == pytest.approx(0.0, abs=1e-12)

    def test_first_observation_is_always_a_record(self):
        # threshold above the support span plus trend: nothing after
        # observation one can ever clear the bar
        s = mc_record_rate(config("uniform", 1.0, 2.5, 200, 30, seed=2))
        assert np.all(s.counts == 1)
        assert s.mean_rate == pytest.approx(1.0 / 200.0)
        assert s.stabilization_fraction == 1.0

    def test_mean_rate_tracks_asymptotic_probability(self):
        from driftrecords import gumbel_p_delta

        c = math.log(2.0)
        s = mc_record_rate(config("gumbel", c, 0.0, 4000, 100, seed=3))
        se = max(s.rate_stderr, 1e-12)
        assert abs(s.mean_rate - gumbel_p_delta(c, 0.0)) < 4.0 * se + 1.0 / 4000.0


class TestTotalRecords:
    def test_classical_mean_count_matches_harmonic_number(self):
        n, reps = 1000, 400
        h_n = float(np.sum(1.0 / np.arange(1, n + 1)))
        s = mc_total_records(config("gumbel", 0.0, 0.0, n, reps, seed=8))
        mean_count = s.counts.mean()
        se = s.counts.std(ddof=1) / math.sqrt(reps)
        assert abs(mean_count - h_n) < 4.0 * se

    def test_distribution_free_when_trend_and_threshold_vanish(self):
        # classical record counts do not depend on the noise law
        n, reps = 800, 300
        a = mc_total_records(config("uniform", 0.0, 0.0, n, reps, seed=21))
        b = mc_total_records(config("pareto1", 0.0, 0.0, n, reps, seed=22))
        se = math.hypot(
            a.counts.std(ddof=1) / math.sqrt(reps),
            b.counts.std(ddof=1) / math.sqrt(reps),
        )
        assert abs(a.counts.mean() - b.counts.mean()) < 4.0 * se

    def test_stabilization_separates_finite_from_infinite(self):
        # negative trend, light tail: records stop early
        finite = mc_total_records(config("normal", -0.5, 0.0, 2000, 200, seed=31))
        assert finite.stabilization_fraction > 0.9
        # positive trend with light tail: records keep arriving
        infinite = mc_total_records(config("gumbel", 0.5, 0.0, 2000, 200, seed=32))
        assert infinite.stabilization_fraction < 0.1


class TestCltSample:
    def test_shape_and_reproducibility(self):
        cfg = config("gumbel", 1.0, 0.0, 1000, 80, seed=13)
        a = mc_clt_sample(cfg, 0.5, workers=1)
        b = mc_clt_sample(cfg, 0.5, workers=3)
        assert a.shape == (80,)
        np.testing.assert_array_equal(a, b)

    def test_centering_uses_the_reference_probability(self):
        cfg = config("gumbel", 1.0, 0.0, 500, 60, seed=14)
        z0 = mc_clt_sample(cfg, 0.0)
        z1 = mc_clt_sample(cfg, 0.25)
        np.testing.assert_allclose(
            z0 - z1, math.sqrt(500) * 0.25 * np.ones(60), rtol=0, atol=1e-9
        )

    def test_sample_mean_near_zero_under_true_reference(self):
        from driftrecords import gumbel_p_delta

        c = math.log(2.0)
        n, reps = 4000, 200
        z = mc_clt_sample(config("gumbel", c, 0.0, n, reps, seed=15),
                          gumbel_p_delta(c, 0.0))
        se = z.std(ddof=1) / math.sqrt(reps)
        assert abs(z.mean()) < 4.0 * se + math.sqrt(n) / n
