import json
import math
import statistics

import numpy as np
import pytest

from wscs_rdf import (
    BackwardChannelSpec,
    DomainError,
    NumericError,
    RNG_ALGORITHM,
    WaterfillSolution,
    empirical_plimsup,
    information_density_samples,
    run_mc_report,
    simulate_backward_channel,
    solve_reverse_waterfill,
    uniform_integrability_diagnostic,
)
from wscs_rdf.mc import _draw_channel, _rng, _STREAM_CHANNEL


def channel(variances, budget):
    sol = solve_reverse_waterfill(variances, budget)
    return BackwardChannelSpec.from_waterfill(variances, sol)


class TestBackwardChannelSpec:
    def test_variance_split_exact(self):
        chan = channel([1.0, 4.0], 1.0)
        assert np.all(chan.reproduction_variances + chan.distortions
                      == np.asarray([1.0, 4.0]))
        assert np.all(chan.reproduction_variances
                      == np.asarray([1.0, 4.0]) - chan.distortions)

    def test_zero_reproduction_variance_allowed(self):
        chan = channel([1.0, 4.0], 2.5)  # zero rate: fully distorted
        assert np.all(chan.reproduction_variances == 0.0)

    def test_negative_reproduction_variance_rejected(self):
        bad = WaterfillSolution(2.0, np.array([2.0, 2.0]), 0.1, 2.0)
        with pytest.raises(NumericError):
            BackwardChannelSpec.from_waterfill([1.0, 4.0], bad)

    def test_length_mismatch_rejected(self):
        sol = solve_reverse_waterfill([1.0, 4.0], 1.0)
        with pytest.raises(DomainError):
            BackwardChannelSpec.from_waterfill([1.0, 4.0, 9.0], sol)


class TestSimulate:
    def test_mse_matches_budget(self):
        rep = simulate_backward_channel(channel([1.0, 4.0], 1.0), k=100_000, trials=20, seed=1)
        assert abs(rep.emp_mse - 1.0) <= rep.emp_mse_half_width
        assert rep.rng_algorithm == RNG_ALGORITHM

    def test_zero_rate_mse_is_mean_variance(self):
        chan = channel([1.0, 4.0], 2.5)
        rep = simulate_backward_channel(chan, k=100_000, trials=20, seed=2)
        assert abs(rep.emp_mse - 2.5) <= rep.emp_mse_half_width

    def test_low_distortion_per_class_mse(self):
        # every residue class gets the same distortion below the water line
        chan = channel([1.0, 4.0, 2.0], 0.5)
        rep = simulate_backward_channel(chan, k=90_000, trials=20, seed=3)
        for m in rep.emp_mse_per_component:
            assert m == pytest.approx(0.5, rel=0.03)

    def test_deterministic(self):
        a = simulate_backward_channel(channel([1.0, 4.0], 1.0), k=1000, trials=5, seed=77)
        b = simulate_backward_channel(channel([1.0, 4.0], 1.0), k=1000, trials=5, seed=77)
        assert a.to_json() == b.to_json()

    def test_distortion_fidelity_50_random_specs(self):
        # empirical MSE lands within 3 standard errors of the budget for
        # every one of 50 random configurations
        rng = np.random.default_rng(1)
        for i in range(50):
            n = int(rng.integers(1, 9))
            v = rng.uniform(0.2, 8.0, n)
            budget = float(rng.uniform(0.05, v.mean()))
            chan = channel(v, budget)
            rep = simulate_backward_channel(chan, k=4000, trials=12, seed=1000 + i)
            assert abs(rep.emp_mse - budget) <= rep.emp_mse_half_width

    def test_block_mse_additivity(self):
        # block MSE of a concatenation is the length-weighted average
        chan = channel([1.0, 4.0], 1.0)
        gen = _rng(5, _STREAM_CHANNEL, 9000, 0)
        shat, s = _draw_channel(chan, 9000, gen)
        sq = (s - shat) ** 2
        k1, k2 = 4000, 5000
        whole = float(sq.mean())
        parts = (k1 * float(sq[:k1].mean()) + k2 * float(sq[k1:].mean())) / (k1 + k2)
        assert whole == pytest.approx(parts, rel=1e-12)

    def test_input_validation(self):
        with pytest.raises(DomainError):
            simulate_backward_channel(channel([1.0], 0.5), k=0, trials=1, seed=0)
        with pytest.raises(DomainError):
            simulate_backward_channel(channel([1.0], 0.5), k=10, trials=0, seed=0)


class TestInformationDensity:
    def test_mean_matches_waterfill_rate(self):
        z = information_density_samples(channel([1.0, 4.0], 1.0), k=10_000, trials=50, seed=4)
        se = statistics.stdev(z.tolist()) / math.sqrt(len(z))
        assert abs(float(np.mean(z)) - 0.5) <= max(0.01, 3 * se)

    def test_stationary_value(self):
        z = information_density_samples(channel([2.0, 2.0], 0.5), k=10_000, trials=50, seed=5)
        se = statistics.stdev(z.tolist()) / math.sqrt(len(z))
        assert abs(float(np.mean(z)) - 1.0) <= max(0.01, 3 * se)

    def test_zero_rate_exactly_zero(self):
        z = information_density_samples(channel([1.0, 4.0], 2.5), k=500, trials=20, seed=6)
        assert np.all(z == 0.0)

    def test_partially_distorted_component_skipped(self):
        # theta above the small variance: that component contributes nothing
        chan = channel([1.0, 4.0], 2.0)
        assert chan.distortions[0] == 1.0
        z = information_density_samples(chan, k=20_000, trials=40, seed=7)
        expect = solve_reverse_waterfill([1.0, 4.0], 2.0).rate_bits
        se = statistics.stdev(z.tolist()) / math.sqrt(len(z))
        assert abs(float(np.mean(z)) - expect) <= max(0.01, 3 * se)

    def test_concentration_rate(self):
        # std shrinks like 1/sqrt(k): each decade ratio near sqrt(10)
        chan = channel([1.0, 4.0], 1.0)
        stds = {}
        for k in (1000, 10_000, 100_000):
            z = information_density_samples(chan, k, trials=200, seed=11)
            stds[k] = float(np.std(z, ddof=1))
        assert 2.5 <= stds[1000] / stds[10_000] <= 4.0
        assert 2.5 <= stds[10_000] / stds[100_000] <= 4.0

    def test_deterministic(self):
        chan = channel([1.0, 4.0], 1.0)
        a = information_density_samples(chan, 1000, 10, seed=8)
        b = information_density_samples(chan, 1000, 10, seed=8)
        assert np.array_equal(a, b)


class TestEmpiricalPlimsup:
    def test_constant_samples(self):
        samples = {k: [0.75] * 120 for k in (100, 1000, 10_000)}
        assert empirical_plimsup(samples) == 0.75

    def test_gaussian_ladder_close_to_rate(self):
        chan = channel([1.0, 4.0], 1.0)
        samples = {k: information_density_samples(chan, k, 150, seed=9)
                   for k in (1000, 10_000, 100_000)}
        est = empirical_plimsup(samples)
        assert abs(est - 0.5) <= 0.05

    def test_median_delta_gives_median(self):
        vals = np.linspace(-1.0, 1.0, 201)  # symmetric, median 0
        samples = {k: vals.copy() for k in (10, 100, 1000)}
        est = empirical_plimsup(samples, delta=0.5)
        assert abs(est) <= 2.0 / 511  # one beta-grid cell around the median

    def test_requires_three_blocklengths(self):
        with pytest.raises(DomainError):
            empirical_plimsup({10: [0.1] * 200, 100: [0.1] * 200})

    def test_requires_enough_samples(self):
        with pytest.raises(DomainError):
            empirical_plimsup({10: [0.1] * 200, 100: [0.1] * 99, 1000: [0.1] * 200})


class TestUniformIntegrability:
    def test_unit_variance_k1_fourth_moment(self):
        # E[S^4] = 3 for a standard normal
        diag = uniform_integrability_diagnostic([1.0], [1], trials=400, seed=10)
        se = diag.std_errs[1]
        assert abs(diag.estimates[1] - 3.0) <= 3 * se
        assert diag.bound == 3.0

    def test_large_k_concentrates_to_one(self):
        diag = uniform_integrability_diagnostic([1.0], [1000], trials=200, seed=12)
        assert diag.estimates[1000] == pytest.approx(1.0, rel=0.05)
        assert diag.within_bound

    def test_bound_holds_for_mixed_variances(self):
        diag = uniform_integrability_diagnostic([1.0, 4.0], [1, 10, 100], trials=300, seed=13)
        assert diag.bound == 48.0
        assert diag.within_bound
        assert diag.max_estimate <= 48.0 + 3 * max(diag.std_errs.values())

    def test_requires_100_trials(self):
        with pytest.raises(DomainError):
            uniform_integrability_diagnostic([1.0], [1], trials=99, seed=0)


class TestReport:
    def test_full_report_fields_and_determinism(self):
        rep = run_mc_report([1.0, 4.0], 1.0, k=2000, trials=30, seed=123)
        payload = json.loads(rep.to_json())
        assert set(payload) == {
            "k", "trials", "seed", "rng_algorithm",
            "emp_mse", "emp_mse_half_width", "emp_mse_per_component",
            "info_density_mean", "info_density_std", "emp_plimsup", "ui_l2_bound",
        }
        assert payload["k"] == 2000
        assert payload["rng_algorithm"] == RNG_ALGORITHM
        assert abs(payload["emp_mse"] - 1.0) <= payload["emp_mse_half_width"]
        rep2 = run_mc_report([1.0, 4.0], 1.0, k=2000, trials=30, seed=123)
        assert rep.to_json() == rep2.to_json()

    def test_different_seeds_differ(self):
        a = run_mc_report([1.0, 4.0], 1.0, k=500, trials=30, seed=1)
        b = run_mc_report([1.0, 4.0], 1.0, k=500, trials=30, seed=2)
        assert a.emp_mse != b.emp_mse
