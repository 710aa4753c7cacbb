"""Periodic variance profiles and the discrete-time sequences they induce.

A zero-mean Gaussian source with a periodically varying variance is
described here by a continuous-time profile ``sigma^2(t)`` with period
``T``.  Uniform sampling at interval ``T_s`` with ``T / T_s = p + eps``
turns the profile into a discrete-time variance sequence: the sequence is
periodic (period ``p*v + u``) exactly when ``eps = u/v`` is rational, and
merely almost-periodic when ``eps`` is irrational.  Floating point cannot
tell those two cases apart, so ``eps`` is kept in exact symbolic form
(:class:`RationalFraction`, :class:`PiFraction`, :class:`DecimalFraction`)
and only classified on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
import numpy as np

from .errors import ConfigError

__all__ = [
    "PulseParams",
    "PulseShape",
    "SineShape",
    "CtVarianceProfile",
    "RationalFraction",
    "PiFraction",
    "DecimalFraction",
    "SymbolicFraction",
    "SamplingSpec",
    "Synchronous",
    "Asynchronous",
    "DtVariancePeriod",
    "pulse_value",
    "ct_variance",
    "rational_approx",
    "classify_sampling",
    "dt_variance_period",
]

# Tolerance used to decide whether a float is an exact representation of a
# small-denominator rational (vs. merely being well approximated by one).
# Exact decimals land within a few ulps (~1e-16); good rational
# approximations of irrationals with denominator <= 1e6 stay above ~1e-13.
_DECIMAL_EXACTNESS_TOL = 1e-15

DEFAULT_DENOMINATOR_CAP = 10**6


# ---------------------------------------------------------------------------
# Pulse waveform
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PulseParams:
    """Trapezoidal pulse geometry on a unit period.

    ``duty_cycle`` is the width of the flat top, ``rise_fall`` the (equal)
    rise and fall times.  Everything is dimensionless; the waveform ramps
    from 0 to 1, holds, ramps back down and stays at 0 until the period ends.
    """

    duty_cycle: float
    rise_fall: float = 0.01

    def __post_init__(self):
        if not (0.0 <= self.duty_cycle <= 0.98):
            raise ConfigError(f"duty_cycle must be in [0, 0.98], got {self.duty_cycle}")
        if not (self.rise_fall > 0.0):
            raise ConfigError(f"rise_fall must be positive, got {self.rise_fall}")
        if self.duty_cycle + 2.0 * self.rise_fall > 1.0:
            raise ConfigError(
                "duty_cycle + 2*rise_fall must not exceed one period "
                f"({self.duty_cycle} + 2*{self.rise_fall})"
            )


def pulse_value(t, params: PulseParams):
    """Evaluate the unit-period trapezoid pulse at time ``t``.

    Piecewise on one period: linear ramp on ``[0, rf]``, plateau value 1 on
    ``(rf, dc+rf)``, linear fall on ``[dc+rf, dc+2rf]``, and 0 on the
    remainder.  The function is continuous and 1-periodic; negative ``t`` is
    wrapped with a floor so offsets may shift arguments below zero.

    Accepts scalars or arrays and returns the matching type; values are
    always in ``[0, 1]``.
    """
    x = np.asarray(t, dtype=float)
    x = x - np.floor(x)
    rf = params.rise_fall
    dc = params.duty_cycle
    out = np.select(
        [x <= rf, x < dc + rf, x <= dc + 2.0 * rf],
        [x / rf, 1.0, 1.0 - (x - dc - rf) / rf],
        default=0.0,
    )
    if np.ndim(t) == 0:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# Continuous-time profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PulseShape:
    """Variance shape ``base + amplitude * pulse(x)``."""

    base: float
    amplitude: float
    pulse: PulseParams

    def __post_init__(self):
        if not (self.base > 0.0 and math.isfinite(self.base)):
            raise ConfigError(f"pulse base variance must be positive, got {self.base}")
        if not (self.amplitude >= 0.0 and math.isfinite(self.amplitude)):
            raise ConfigError(f"pulse amplitude must be >= 0, got {self.amplitude}")


@dataclass(frozen=True)
class SineShape:
    """Variance shape ``mean + amplitude * sin(2*pi*x)``."""

    mean: float
    amplitude: float

    def __post_init__(self):
        if not (self.amplitude >= 0.0 and math.isfinite(self.amplitude)):
            raise ConfigError(f"sine amplitude must be >= 0, got {self.amplitude}")
        if not (self.mean > self.amplitude):
            raise ConfigError(
                f"sine mean must exceed amplitude for a positive variance "
                f"(mean={self.mean}, amplitude={self.amplitude})"
            )


@dataclass(frozen=True)
class CtVarianceProfile:
    """A strictly positive, periodic continuous-time variance function.

    Parameters
    ----------
    shape : PulseShape or SineShape
        Functional form evaluated on the normalized phase ``t/period``.
    period : float
        Period in seconds.
    phase_offset : float
        Offset normalized to the period, in ``[0, 1)``.  The profile is
        evaluated at ``t/period - phase_offset``.
    """

    shape: Union[PulseShape, SineShape]
    period: float
    phase_offset: float = 0.0

    def __post_init__(self):
        if not (self.period > 0.0 and math.isfinite(self.period)):
            raise ConfigError(f"period must be positive and finite, got {self.period}")
        if not (0.0 <= self.phase_offset < 1.0):
            raise ConfigError(f"phase_offset must be in [0, 1), got {self.phase_offset}")

    def value_at_phase(self, x):
        """Variance at normalized time ``x = t / period`` (scalar or array)."""
        s = self.shape
        if isinstance(s, PulseShape):
            return s.base + s.amplitude * pulse_value(np.asarray(x, float) - self.phase_offset, s.pulse)
        return s.mean + s.amplitude * np.sin(2.0 * np.pi * (np.asarray(x, float) - self.phase_offset))

    def value(self, t):
        """Variance at absolute time ``t`` in seconds (scalar or array)."""
        return self.value_at_phase(np.asarray(t, float) / self.period)

    def min_variance(self) -> float:
        s = self.shape
        if isinstance(s, PulseShape):
            return s.base
        return s.mean - s.amplitude

    def max_variance(self) -> float:
        s = self.shape
        if isinstance(s, PulseShape):
            return s.base + s.amplitude
        return s.mean + s.amplitude

    def scaled(self, factor: float) -> "CtVarianceProfile":
        """Profile with every variance multiplied by ``factor`` (> 0)."""
        if not (factor > 0.0 and math.isfinite(factor)):
            raise ConfigError(f"variance scale factor must be positive, got {factor}")
        s = self.shape
        if isinstance(s, PulseShape):
            new = PulseShape(s.base * factor, s.amplitude * factor, s.pulse)
        else:
            new = SineShape(s.mean * factor, s.amplitude * factor)
        return CtVarianceProfile(new, self.period, self.phase_offset)


def ct_variance(profile: CtVarianceProfile, t):
    """Variance of the continuous-time source at time ``t`` (seconds)."""
    return profile.value(t)


# ---------------------------------------------------------------------------
# Symbolic fractional mismatch
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFraction:
    """Exact rational mismatch ``num/den`` in ``[0, 1)``, stored reduced."""

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ConfigError(f"denominator must be positive, got {self.den}")
        if not (0 <= self.num < self.den):
            raise ConfigError(f"rational mismatch {self.num}/{self.den} not in [0, 1)")
        g = math.gcd(self.num, self.den)
        if g > 1:
            object.__setattr__(self, "num", self.num // g)
            object.__setattr__(self, "den", self.den // g)

    def value(self) -> float:
        return self.num / self.den

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def floor_times(self, n: int) -> int:
        return (n * self.num) // self.den

    def expr(self) -> str:
        return f"{self.num}/{self.den}"


@dataclass(frozen=True)
class PiFraction:
    """Irrational mismatch of the form ``pi_num*pi/pi_den + add_num/add_den``."""

    pi_num: int
    pi_den: int = 1
    add_num: int = 0
    add_den: int = 1

    def __post_init__(self):
        if self.pi_den <= 0 or self.add_den <= 0:
            raise ConfigError("pi-expression denominators must be positive")
        v = self.value()
        if not (0.0 <= v < 1.0):
            raise ConfigError(f"mismatch value {v} not in [0, 1)")

    def value(self) -> float:
        return math.pi * self.pi_num / self.pi_den + self.add_num / self.add_den

    def as_fraction(self):
        if self.pi_num == 0:
            return Fraction(self.add_num, self.add_den)
        return None

    def floor_times(self, n: int) -> int:
        # float64 would be safe for the n used in practice, but the floor of
        # a near-integer multiple must never flip; 60 digits settle it.
        with mpmath.workdps(60):
            val = mpmath.mpf(n) * (
                mpmath.pi * self.pi_num / self.pi_den
                + mpmath.mpf(self.add_num) / self.add_den
            )
            return int(mpmath.floor(val))

    def expr(self) -> str:
        s = "pi" if self.pi_num == 1 else f"{self.pi_num}*pi"
        if self.pi_den != 1:
            s += f"/{self.pi_den}"
        if self.add_num != 0:
            s += f"+{self.add_num}/{self.add_den}"
        return s


@dataclass(frozen=True)
class DecimalFraction:
    """A mismatch given only as a floating-point number in ``[0, 1)``.

    The float is kept verbatim; whether it stands for a small-denominator
    rational is decided by :func:`classify_sampling` via continued fractions.
    """

    raw: float

    def __post_init__(self):
        if not (0.0 <= self.raw < 1.0) or not math.isfinite(self.raw):
            raise ConfigError(f"decimal mismatch {self.raw} not in [0, 1)")

    def value(self) -> float:
        return self.raw

    def as_fraction(self) -> Fraction:
        # Every float is an exact binary rational.
        return Fraction(self.raw)

    def floor_times(self, n: int) -> int:
        return math.floor(n * Fraction(self.raw))

    def expr(self) -> str:
        return f"{self.raw:.17g}"


SymbolicFraction = Union[RationalFraction, PiFraction, DecimalFraction]


@dataclass(frozen=True)
class Synchronous:
    """Sampling with rational mismatch ``num/den``: the sampled variance is
    periodic with period ``p*den + num`` for integer part ``p``."""

    num: int
    den: int

    def dt_period(self, p: int) -> int:
        return p * self.den + self.num

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)


@dataclass(frozen=True)
class Asynchronous:
    """Sampling whose mismatch has no usable rational structure."""


def classify_sampling(eps: SymbolicFraction, denominator_cap: int = DEFAULT_DENOMINATOR_CAP):
    """Decide whether a mismatch behaves synchronously up to a denominator cap.

    Rationals with denominator at most ``denominator_cap`` are synchronous;
    pi-expressions are asynchronous; decimals are resolved through their
    continued-fraction expansion truncated at the cap and accepted as
    synchronous only when the truncation reproduces the float essentially
    exactly.  Rationals with denominators beyond the cap are treated as
    asynchronous: their exact period is computationally indistinguishable
    from the approximating sequence used in the asynchronous evaluation.
    """
    if denominator_cap < 1:
        raise ConfigError(f"denominator cap must be >= 1, got {denominator_cap}")
    if isinstance(eps, RationalFraction):
        if eps.den <= denominator_cap:
            return Synchronous(eps.num, eps.den)
        return Asynchronous()
    if isinstance(eps, PiFraction):
        exact = eps.as_fraction()
        if exact is not None and exact.denominator <= denominator_cap:
            return Synchronous(exact.numerator, exact.denominator)
        return Asynchronous()
    if isinstance(eps, DecimalFraction):
        approx = Fraction(eps.raw).limit_denominator(denominator_cap)
        if abs(float(approx) - eps.raw) <= _DECIMAL_EXACTNESS_TOL:
            return Synchronous(approx.numerator, approx.denominator)
        return Asynchronous()
    raise ConfigError(f"not a symbolic fraction: {eps!r}")


def rational_approx(eps: SymbolicFraction, n: int, p: int) -> tuple[Fraction, int]:
    """Rational stand-in ``floor(n*eps)/n`` for the mismatch, plus its period.

    Returns the reduced fraction ``eps_n`` and the period
    ``p_n = p*n + floor(n*eps)`` of the variance sequence sampled with
    mismatch ``eps_n``.  The approximation satisfies
    ``eps - 1/n < eps_n <= eps``.
    """
    if n < 1:
        raise ConfigError(f"approximation index n must be >= 1, got {n}")
    k = eps.floor_times(n)
    return Fraction(k, n), p * n + k


# ---------------------------------------------------------------------------
# Sampling and the induced DT variance sequence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SamplingSpec:
    """Uniform sampling defined by ``T/T_s = p + eps`` plus a time offset.

    ``offset`` shifts every sample time by an absolute amount (seconds); it
    adds to the profile's own normalized ``phase_offset``.
    """

    p: int
    eps: SymbolicFraction
    offset: float = 0.0

    def __post_init__(self):
        if self.p < 1:
            raise ConfigError(f"integer part p must be >= 1, got {self.p}")
        v = self.eps.value()
        if not (0.0 <= v < 1.0):
            raise ConfigError(f"mismatch value {v} not in [0, 1)")
        if not math.isfinite(self.offset):
            raise ConfigError("sampling offset must be finite")

    def ratio(self) -> float:
        """The sampling ratio ``T/T_s = p + eps`` as a float."""
        return self.p + self.eps.value()


@dataclass(frozen=True)
class DtVariancePeriod:
    """One period of the sampled variance sequence (strictly positive)."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ConfigError("variance period must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ConfigError("variances must be finite")
        if np.any(arr <= 0.0) or arr.min() < 1e-12 * arr.max():
            raise ConfigError("variances must be strictly positive and not vanish relative to the largest")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def period(self) -> int:
        return int(self.values.size)


def dt_variance_period(
    profile: CtVarianceProfile,
    spec: SamplingSpec,
    eps_rational: Union[Fraction, RationalFraction],
) -> DtVariancePeriod:
    """Sample one full period of the variance sequence for a rational mismatch.

    With ``eps = u/v`` (reduced) the sample times ``m * T/(p + u/v)`` repeat
    with period ``N = p*v + u``; their normalized phases are the exact grid
    ``(m*v mod N)/N``, shifted by the absolute sampling offset.  Using the
    integer grid keeps the sequence exactly periodic in floating point.
    """
    if isinstance(eps_rational, RationalFraction):
        frac = eps_rational.as_fraction()
    else:
        frac = Fraction(eps_rational)
    if not (0 <= frac < 1):
        raise ConfigError(f"rational mismatch {frac} not in [0, 1)")
    u, v = frac.numerator, frac.denominator
    n_p = spec.p * v + u
    j = (np.arange(n_p, dtype=np.int64) * v) % n_p
    x = j / float(n_p) + spec.offset / profile.period
    return DtVariancePeriod(profile.value_at_phase(x))
