"""Rate-distortion analysis of uniformly sampled cyclostationary Gaussian sources.

The package computes rate-distortion functions of memoryless Gaussian
sources whose variance varies periodically in continuous time:

* exactly, via reverse water-filling, when the sampling ratio has a
  rational fractional part (synchronous sampling), and
* as the tail limit superior of a sequence of synchronous solutions when
  the fractional part is irrational (asynchronous sampling),

and verifies the results by Monte Carlo simulation of the rate-achieving
backward test channel.
"""

from .errors import ConfigError, DomainError, NumericError
from .variance import (
    PulseParams,
    PulseShape,
    SineShape,
    CtVarianceProfile,
    RationalFraction,
    PiFraction,
    DecimalFraction,
    SymbolicFraction,
    SamplingSpec,
    Synchronous,
    Asynchronous,
    DtVariancePeriod,
    pulse_value,
    ct_variance,
    rational_approx,
    classify_sampling,
    dt_variance_period,
)
from .waterfill import (
    WaterfillSolution,
    distortion_from_theta,
    solve_reverse_waterfill,
    rate_from_solution,
)
from .sequence import (
    RdfEntry,
    RdfSeries,
    SweepPoint,
    SweepResult,
    PointRate,
    rdf_synchronous,
    rdf_series,
    rdf_point,
    sweep_ratio,
    sweep_distortion,
    scaling_check,
    DEFAULT_TAIL_WINDOW,
)
from .mc import (
    RNG_ALGORITHM,
    BackwardChannelSpec,
    McReport,
    UiDiagnostic,
    simulate_backward_channel,
    information_density_samples,
    empirical_plimsup,
    uniform_integrability_diagnostic,
    run_mc_report,
)
from .cli import parse_eps

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DomainError", "NumericError",
    "PulseParams", "PulseShape", "SineShape", "CtVarianceProfile",
    "RationalFraction", "PiFraction", "DecimalFraction", "SymbolicFraction",
    "SamplingSpec", "Synchronous", "Asynchronous", "DtVariancePeriod",
    "pulse_value", "ct_variance", "rational_approx", "classify_sampling",
    "dt_variance_period",
    "WaterfillSolution", "distortion_from_theta", "solve_reverse_waterfill",
    "rate_from_solution",
    "RdfEntry", "RdfSeries", "SweepPoint", "SweepResult", "PointRate",
    "rdf_synchronous", "rdf_series", "rdf_point", "sweep_ratio",
    "sweep_distortion", "scaling_check", "DEFAULT_TAIL_WINDOW",
    "RNG_ALGORITHM", "BackwardChannelSpec", "McReport", "UiDiagnostic",
    "simulate_backward_channel", "information_density_samples",
    "empirical_plimsup", "uniform_integrability_diagnostic", "run_mc_report",
    "parse_eps",
]
