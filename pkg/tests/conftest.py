import pytest

from wscs_rdf import CtVarianceProfile, PulseParams, PulseShape, SineShape

PULSE_PERIOD = 5e-6  # seconds


def pulse_profile(duty_cycle: float, phase_offset: float = 0.0) -> CtVarianceProfile:
    """The running pulse configuration: base 0.2, amplitude 4.8, rise/fall 0.01."""
    return CtVarianceProfile(
        PulseShape(0.2, 4.8, PulseParams(duty_cycle, 0.01)), PULSE_PERIOD, phase_offset
    )


def sine_profile(period: float = 3.0) -> CtVarianceProfile:
    """Sine variance, mean 2, amplitude 1/2."""
    return CtVarianceProfile(SineShape(2.0, 0.5), period)


@pytest.fixture
def pulse75():
    return pulse_profile(0.75)


@pytest.fixture
def pulse75_phi():
    return pulse_profile(0.75, 1.0 / 16.0)


@pytest.fixture
def pulse45():
    return pulse_profile(0.45)


@pytest.fixture
def pulse45_phi():
    return pulse_profile(0.45, 1.0 / 16.0)
