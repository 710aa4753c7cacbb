import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wscs_rdf import (
    Asynchronous,
    ConfigError,
    CtVarianceProfile,
    DecimalFraction,
    PiFraction,
    PulseParams,
    PulseShape,
    RationalFraction,
    SamplingSpec,
    SineShape,
    Synchronous,
    classify_sampling,
    ct_variance,
    dt_variance_period,
    pulse_value,
    rational_approx,
)
from conftest import pulse_profile, sine_profile


class TestPulseValue:
    def test_ramp_start_is_zero(self):
        assert pulse_value(0.0, PulseParams(0.45, 0.01)) == 0.0

    def test_ramp_midpoint(self):
        assert pulse_value(0.005, PulseParams(0.45, 0.01)) == pytest.approx(0.5, abs=1e-15)

    def test_plateau(self):
        assert pulse_value(0.2, PulseParams(0.45, 0.01)) == 1.0

    def test_periodicity(self):
        p = PulseParams(0.45, 0.01)
        assert pulse_value(1.2, p) == pytest.approx(pulse_value(0.2, p), abs=1e-12)

    def test_negative_argument_wraps(self):
        p = PulseParams(0.45, 0.01)
        assert pulse_value(-0.8, p) == pytest.approx(pulse_value(0.2, p), abs=1e-12)

    def test_fall_segment(self):
        # halfway down the fall: t = dc + 1.5*rf
        assert pulse_value(0.465, PulseParams(0.45, 0.01)) == pytest.approx(0.5, abs=1e-10)

    def test_piece_boundaries(self):
        # the function is continuous across every piece boundary, so the
        # boundary values are pinned up to float rounding of the corners
        p = PulseParams(0.45, 0.01)
        assert pulse_value(0.01, p) == 1.0                            # ramp top
        assert pulse_value(0.46, p) == pytest.approx(1.0, abs=1e-12)  # fall start
        assert pulse_value(0.47, p) == pytest.approx(0.0, abs=1e-12)  # fall bottom

    def test_zero_floor(self):
        assert pulse_value(0.9, PulseParams(0.45, 0.01)) == 0.0

    def test_vectorized(self):
        p = PulseParams(0.75, 0.01)
        t = np.array([0.0, 0.2, 0.9])
        out = pulse_value(t, p)
        assert out.shape == (3,)
        assert list(out) == [0.0, 1.0, 0.0]

    @given(st.floats(-5, 5), st.floats(0.0, 0.98), st.floats(0.001, 0.01))
    @settings(max_examples=200, deadline=None)
    def test_range_and_period(self, t, dc, rf):
        p = PulseParams(dc, rf)
        v = pulse_value(t, p)
        assert 0.0 <= v <= 1.0
        assert pulse_value(t + 1.0, p) == pytest.approx(v, abs=1e-9)

    def test_invalid_params_rejected(self):
        with pytest.raises(ConfigError):
            PulseParams(0.99, 0.01)
        with pytest.raises(ConfigError):
            PulseParams(0.5, 0.0)
        with pytest.raises(ConfigError):
            PulseParams(0.98, 0.02)


class TestCtVariance:
    def test_pulse_plateau_value(self):
        prof = pulse_profile(0.75)
        assert ct_variance(prof, 0.2 * 5e-6) == pytest.approx(5.0, abs=1e-12)

    def test_pulse_at_zero(self):
        prof = pulse_profile(0.75)
        assert ct_variance(prof, 0.0) == pytest.approx(0.2, abs=1e-15)

    def test_sine_value(self):
        prof = sine_profile(period=3.0)
        assert ct_variance(prof, 1.0) == pytest.approx(2.0 + 0.5 * math.sin(2 * math.pi / 3), abs=1e-12)
        assert ct_variance(prof, 1.0) == pytest.approx(2.433, abs=5e-4)

    def test_min_max(self):
        prof = pulse_profile(0.75)
        assert prof.min_variance() == 0.2
        assert prof.max_variance() == 5.0
        s = sine_profile()
        assert s.min_variance() == 1.5
        assert s.max_variance() == 2.5

    def test_profile_periodicity_on_grid(self):
        for prof in (pulse_profile(0.45, 0.3), sine_profile()):
            t = np.linspace(0.0, prof.period, 1000, endpoint=False)
            a = np.asarray(prof.value(t))
            b = np.asarray(prof.value(t + prof.period))
            assert np.max(np.abs(a - b) / np.abs(a)) < 1e-12

    def test_positive_everywhere(self):
        prof = pulse_profile(0.98)
        t = np.linspace(-2, 2, 4001) * prof.period
        assert np.all(np.asarray(prof.value(t)) >= 0.2)

    def test_scaled(self):
        prof = pulse_profile(0.75).scaled(4.0)
        assert prof.min_variance() == pytest.approx(0.8)
        assert prof.max_variance() == pytest.approx(20.0)

    def test_invalid_profiles(self):
        with pytest.raises(ConfigError):
            SineShape(mean=1.0, amplitude=1.0)  # touches zero
        with pytest.raises(ConfigError):
            PulseShape(base=0.0, amplitude=1.0, pulse=PulseParams(0.5))
        with pytest.raises(ConfigError):
            CtVarianceProfile(SineShape(2.0, 0.5), period=-1.0)
        with pytest.raises(ConfigError):
            CtVarianceProfile(SineShape(2.0, 0.5), period=1.0, phase_offset=1.0)


class TestRationalApprox:
    def test_pi_over_7_n10(self):
        eps_n, p_n = rational_approx(PiFraction(1, 7), 10, 2)
        assert eps_n == Fraction(2, 5)  # floor(10*pi/7) = 4 -> 4/10 reduced
        assert p_n == 24

    def test_pi_over_7_n1(self):
        eps_n, p_n = rational_approx(PiFraction(1, 7), 1, 2)
        assert eps_n == Fraction(0, 1)
        assert p_n == 2

    def test_exact_at_multiples(self):
        eps_n, p_n = rational_approx(RationalFraction(1, 2), 4, 2)
        assert eps_n == Fraction(1, 2)
        assert p_n == 10

    def test_rejects_bad_n(self):
        with pytest.raises(ConfigError):
            rational_approx(RationalFraction(1, 2), 0, 2)

    @pytest.mark.parametrize(
        "eps",
        [PiFraction(1, 7), PiFraction(5, 32), RationalFraction(3, 5), DecimalFraction(0.448798950512827)],
    )
    def test_sandwich(self, eps):
        # eps - 1/n < eps_n <= eps, and the running supremum never decreases
        value = eps.value()
        running = -1.0
        for n in list(range(1, 600)) + [10**3, 5000, 10**4]:
            eps_n, _ = rational_approx(eps, n, 2)
            x = float(eps_n)
            assert value - 1.0 / n < x <= value + 1e-15
            running = max(running, x)
            assert running <= value + 1e-15
        assert value - running < 1e-3

    @given(st.integers(1, 10**4))
    @settings(max_examples=150, deadline=None)
    def test_sandwich_hypothesis(self, n):
        eps = PiFraction(5, 32)
        eps_n, p_n = rational_approx(eps, n, 3)
        assert eps.value() - 1.0 / n < float(eps_n) <= eps.value()
        assert p_n == 3 * n + math.floor(n * eps.value())


class TestClassify:
    def test_rational_halfexact(self):
        cls = classify_sampling(RationalFraction(1, 2), 10**6)
        assert cls == Synchronous(1, 2)

    def test_pi_async(self):
        assert isinstance(classify_sampling(PiFraction(5, 32), 10**6), Asynchronous)

    def test_decimal_rational(self):
        cls = classify_sampling(DecimalFraction(0.6), 10**6)
        assert cls == Synchronous(3, 5)

    def test_decimal_irrational_value(self):
        # float of pi/7 has no small-denominator representation
        assert isinstance(classify_sampling(DecimalFraction(math.pi / 7), 10**6), Asynchronous)

    def test_rational_beyond_cap(self):
        assert isinstance(classify_sampling(RationalFraction(51, 100), 50), Asynchronous)
        assert classify_sampling(RationalFraction(51, 100), 100) == Synchronous(51, 100)

    def test_decimal_cap_boundary(self):
        # 0.26 = 13/50: synchronous at cap 50, asynchronous just below
        assert classify_sampling(DecimalFraction(2.26 - 2), 50) == Synchronous(13, 50)
        assert isinstance(classify_sampling(DecimalFraction(2.26 - 2), 49), Asynchronous)

    def test_period_helper(self):
        assert Synchronous(1, 2).dt_period(2) == 5


class TestDtVariancePeriod:
    def test_sine_no_offset_golden(self):
        # closed form: 2 + sin(2*pi*i/3)/2
        prof = sine_profile(period=3.0)
        spec = SamplingSpec(3, RationalFraction(0, 1))
        got = dt_variance_period(prof, spec, Fraction(0, 1)).values
        expected = [2 + 0.5 * math.sin(2 * math.pi * i / 3) for i in range(3)]
        assert got == pytest.approx(expected, abs=1e-12)
        assert got == pytest.approx([2.0, 2.433, 1.567], abs=5e-4)

    def test_sine_with_absolute_offset(self):
        # offset T_s/(2 pi) shifts the phase by exactly 1/3 radian:
        # value_i = 2 + sin((2*pi*i + 1)/3)/2
        prof = sine_profile(period=3.0)
        spec = SamplingSpec(3, RationalFraction(0, 1), offset=1.0 / (2 * math.pi))
        got = dt_variance_period(prof, spec, Fraction(0, 1)).values
        expected = [2 + 0.5 * math.sin((2 * math.pi * i + 1) / 3) for i in range(3)]
        assert got == pytest.approx(expected, abs=1e-12)

    def test_constant_profile(self):
        prof = CtVarianceProfile(PulseShape(2.0, 0.0, PulseParams(0.5)), 1.0)
        spec = SamplingSpec(2, RationalFraction(1, 2))
        got = dt_variance_period(prof, spec, Fraction(1, 2)).values
        assert got == pytest.approx([2.0] * 5, abs=0)

    def test_period_length(self):
        prof = pulse_profile(0.75)
        spec = SamplingSpec(2, RationalFraction(1, 4))
        per = dt_variance_period(prof, spec, Fraction(1, 4))
        assert per.period == 9

    def test_repeat_matches_direct_sampling(self):
        prof = pulse_profile(0.45, phase_offset=0.125)
        spec = SamplingSpec(2, RationalFraction(2, 5), offset=3e-7)
        per = dt_variance_period(prof, spec, Fraction(2, 5))
        n_p = per.period
        t_s = prof.period / (2 + 2 / 5)
        direct = np.asarray(prof.value(np.arange(2 * n_p) * t_s + spec.offset))
        tiled = np.tile(per.values, 2)
        assert np.max(np.abs(direct - tiled) / direct) < 1e-12

    def test_entries_within_profile_range(self):
        for dc in (0.2, 0.45, 0.75, 0.98):
            prof = pulse_profile(dc, phase_offset=0.3)
            spec = SamplingSpec(3, RationalFraction(7, 9), offset=1e-7)
            per = dt_variance_period(prof, spec, Fraction(7, 9))
            assert per.values.min() >= prof.min_variance() - 1e-15
            assert per.values.max() <= prof.max_variance() + 1e-15

    def test_values_read_only(self):
        prof = pulse_profile(0.75)
        per = dt_variance_period(prof, SamplingSpec(2, RationalFraction(1, 2)), Fraction(1, 2))
        with pytest.raises(ValueError):
            per.values[0] = 9.9

    def test_sampling_spec_validation(self):
        with pytest.raises(ConfigError):
            SamplingSpec(0, RationalFraction(1, 2))
        with pytest.raises(ConfigError):
            RationalFraction(3, 2)
        with pytest.raises(ConfigError):
            DecimalFraction(1.0)
        with pytest.raises(ConfigError):
            PiFraction(1, 2)  # pi/2 > 1
