"""Rate-distortion of sampled sources across sampling configurations.

For a rational mismatch the rate is computed exactly by reverse
water-filling on one period of the sampled variance.  For an irrational
(or effectively irrational) mismatch ``eps`` the rate is estimated as the
tail limit superior of the sequence ``R_n(D)`` obtained from the rational
stand-ins ``eps_n = floor(n*eps)/n``: the sequence need not converge, so
the estimator takes the maximum over a tail window of ``n`` and reports
the window spread so callers can judge stabilization.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import ConfigError, DomainError
from .variance import (
    CtVarianceProfile,
    DecimalFraction,
    DtVariancePeriod,
    RationalFraction,
    SamplingSpec,
    Synchronous,
    SymbolicFraction,
    classify_sampling,
    dt_variance_period,
    rational_approx,
    DEFAULT_DENOMINATOR_CAP,
)
from .waterfill import solve_reverse_waterfill
from ._parallel import parallel_map

__all__ = [
    "RdfEntry",
    "RdfSeries",
    "SweepPoint",
    "SweepResult",
    "PointRate",
    "rdf_synchronous",
    "rdf_series",
    "rdf_point",
    "sweep_ratio",
    "sweep_distortion",
    "scaling_check",
    "DEFAULT_TAIL_WINDOW",
]

DEFAULT_TAIL_WINDOW = (230, 500)


@dataclass(frozen=True)
class RdfEntry:
    """One element of the rate sequence: index, rational stand-in, period, rate."""

    n: int
    eps_n: Fraction
    p_n: int
    rate_bits: float
    theta: float


@dataclass(frozen=True)
class RdfSeries:
    """The sequence ``R_n(D)`` plus its tail-window limsup estimate."""

    entries: tuple[RdfEntry, ...]
    tail_window: tuple[int, int]
    limsup_estimate: float
    tail_spread: float
    limsup_at: int
    low_distortion: bool

    def entry(self, n: int) -> RdfEntry:
        return self.entries[n - 1]


@dataclass(frozen=True)
class SweepPoint:
    x: float
    rate_bits: float
    mode: str  # "sync" | "async"
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SweepResult:
    axis: str  # "n" | "ratio" | "distortion"
    points: tuple[SweepPoint, ...]


@dataclass(frozen=True)
class PointRate:
    """A single evaluated rate with enough metadata to reproduce it exactly."""

    rate_bits: float
    mode: str
    metadata: dict


@lru_cache(maxsize=4096)
def _cached_period(
    profile: CtVarianceProfile, p: int, num: int, den: int, offset: float
) -> DtVariancePeriod:
    spec = SamplingSpec(p=p, eps=RationalFraction(num, den), offset=offset)
    return dt_variance_period(profile, spec, Fraction(num, den))


def _solve_sync(profile, p, num, den, offset, distortion):
    variances = _cached_period(profile, p, num, den, offset)
    sol = solve_reverse_waterfill(variances, distortion)
    return sol, variances.period


def rdf_synchronous(
    profile: CtVarianceProfile,
    spec: SamplingSpec,
    u: int,
    v: int,
    distortion: float,
) -> float:
    """Exact rate (bits/sample) for rational mismatch ``u/v``.

    The sampled variance has period ``p*v + u``; the rate is the reverse
    water-filling rate over that one period.
    """
    frac = Fraction(u, v)
    if not (0 <= frac < 1):
        raise DomainError(f"mismatch {u}/{v} not in [0, 1)")
    sol, _ = _solve_sync(profile, spec.p, frac.numerator, frac.denominator, spec.offset, distortion)
    return sol.rate_bits


def rdf_series(
    profile: CtVarianceProfile,
    spec: SamplingSpec,
    distortion: float,
    n_max: int,
    tail_window: tuple[int, int] = DEFAULT_TAIL_WINDOW,
    threads: Optional[int] = None,
) -> RdfSeries:
    """Evaluate ``R_n(D)`` for ``n = 1..n_max`` and estimate the tail limsup.

    The limsup estimate is the maximum rate over ``tail_window``; the
    spread (max - min over the window) is reported alongside.  If the
    budget is not below the profile's minimum variance the series is still
    computed, but the limsup reading loses its low-distortion backing and a
    warning is emitted.
    """
    lo, hi = int(tail_window[0]), int(tail_window[1])
    if not (1 <= lo <= hi <= n_max):
        raise ConfigError(f"need 1 <= tail lo <= tail hi <= n_max, got {tail_window} with n_max={n_max}")

    low_distortion = distortion < profile.min_variance()
    if not low_distortion:
        warnings.warn(
            "distortion budget is not below the minimum variance; the tail "
            "limsup is reported but is outside its low-distortion validity",
            stacklevel=2,
        )

    def one(n: int) -> RdfEntry:
        eps_n, p_n = rational_approx(spec.eps, n, spec.p)
        sol, _ = _solve_sync(
            profile, spec.p, eps_n.numerator, eps_n.denominator, spec.offset, distortion
        )
        return RdfEntry(n, eps_n, p_n, sol.rate_bits, sol.theta)

    entries = tuple(parallel_map(one, range(1, n_max + 1), threads))
    tail = entries[lo - 1 : hi]
    rates = [e.rate_bits for e in tail]
    best = max(range(len(rates)), key=rates.__getitem__)
    return RdfSeries(
        entries=entries,
        tail_window=(lo, hi),
        limsup_estimate=rates[best],
        tail_spread=max(rates) - min(rates),
        limsup_at=tail[best].n,
        low_distortion=low_distortion,
    )


def rdf_point(
    profile: CtVarianceProfile,
    spec: SamplingSpec,
    distortion: float,
    classify_cap: int = DEFAULT_DENOMINATOR_CAP,
    tail_window: tuple[int, int] = DEFAULT_TAIL_WINDOW,
    threads: Optional[int] = None,
) -> PointRate:
    """Rate for one sampling spec, dispatching on the mismatch class.

    Synchronous mismatches are solved exactly; asynchronous ones through
    the tail limsup of :func:`rdf_series`.  The metadata identifies the
    exact period and water level that produced the rate, so the number can
    be reproduced bit-for-bit.
    """
    cls = classify_sampling(spec.eps, classify_cap)
    if isinstance(cls, Synchronous):
        sol, n_p = _solve_sync(profile, spec.p, cls.num, cls.den, spec.offset, distortion)
        meta = {
            "p": spec.p,
            "eps_num": cls.num,
            "eps_den": cls.den,
            "p_n": n_p,
            "theta": sol.theta,
        }
        return PointRate(sol.rate_bits, "sync", meta)
    series = rdf_series(profile, spec, distortion, n_max=tail_window[1], tail_window=tail_window, threads=threads)
    e = series.entry(series.limsup_at)
    meta = {
        "p": spec.p,
        "n": e.n,
        "eps_num": e.eps_n.numerator,
        "eps_den": e.eps_n.denominator,
        "p_n": e.p_n,
        "theta": e.theta,
        "tail_window": series.tail_window,
        "tail_spread": series.tail_spread,
    }
    return PointRate(series.limsup_estimate, "async", meta)


def _split_ratio(ratio: float) -> tuple[int, DecimalFraction]:
    if not (ratio > 1.0):
        raise ConfigError(f"sampling ratio must exceed 1, got {ratio}")
    p = int(ratio)
    # subtracting the integer part of a float is exact
    return p, DecimalFraction(ratio - p)


def sweep_ratio(
    profile: CtVarianceProfile,
    ratios: Sequence[float],
    distortion: float,
    classify_cap: int = DEFAULT_DENOMINATOR_CAP,
    tail_window: tuple[int, int] = DEFAULT_TAIL_WINDOW,
    offset: float = 0.0,
    threads: Optional[int] = None,
) -> SweepResult:
    """Rate as a function of the sampling ratio ``T/T_s``.

    Each ratio is split into integer part and fractional mismatch; the
    mismatch is classified against ``classify_cap`` and the point is
    evaluated exactly (synchronous) or via the tail limsup (asynchronous).
    """

    def one(ratio: float) -> SweepPoint:
        p, eps = _split_ratio(float(ratio))
        spec = SamplingSpec(p=p, eps=eps, offset=offset)
        point = rdf_point(profile, spec, distortion, classify_cap, tail_window, threads=1)
        cls = classify_sampling(eps, classify_cap)
        expr = (
            f"{cls.num}/{cls.den}" if isinstance(cls, Synchronous) else eps.expr()
        )
        meta = dict(point.metadata)
        meta["eps_expr"] = expr
        return SweepPoint(float(ratio), point.rate_bits, point.mode, meta)

    points = list(parallel_map(one, sorted(float(r) for r in ratios), threads))
    return SweepResult("ratio", tuple(points))


def sweep_distortion(
    profile: CtVarianceProfile,
    spec: SamplingSpec,
    distortion_grid: Sequence[float],
    eps_list: Sequence[SymbolicFraction],
    classify_cap: int = DEFAULT_DENOMINATOR_CAP,
    tail_window: tuple[int, int] = DEFAULT_TAIL_WINDOW,
    threads: Optional[int] = None,
) -> SweepResult:
    """Rate versus distortion budget, one curve per mismatch in ``eps_list``."""
    if any(not (d > 0.0) for d in distortion_grid):
        raise ConfigError("all distortion budgets must be positive")

    tasks = [
        (float(d), eps)
        for d in sorted(float(x) for x in distortion_grid)
        for eps in eps_list
    ]

    def one(task) -> SweepPoint:
        d, eps = task
        point_spec = SamplingSpec(p=spec.p, eps=eps, offset=spec.offset)
        point = rdf_point(profile, point_spec, d, classify_cap, tail_window, threads=1)
        meta = dict(point.metadata)
        meta["eps_expr"] = eps.expr()
        return SweepPoint(d, point.rate_bits, point.mode, meta)

    points = list(parallel_map(one, tasks, threads))
    return SweepResult("distortion", tuple(points))


def scaling_check(
    profile: CtVarianceProfile,
    spec: SamplingSpec,
    distortion: float,
    alpha: float,
    classify_cap: int = DEFAULT_DENOMINATOR_CAP,
    tail_window: tuple[int, int] = DEFAULT_TAIL_WINDOW,
) -> tuple[float, float]:
    """Rates for the original source and its ``alpha``-scaled counterpart.

    Scaling every sample by ``alpha`` multiplies variances and the natural
    distortion budget by ``alpha**2`` and leaves the rate unchanged; the
    pair is returned so callers can assert the equality.
    """
    if not (alpha > 0.0):
        raise DomainError(f"scale alpha must be positive, got {alpha}")
    base = rdf_point(profile, spec, distortion, classify_cap, tail_window)
    scaled = rdf_point(
        profile.scaled(alpha * alpha), spec, alpha * alpha * distortion, classify_cap, tail_window
    )
    return base.rate_bits, scaled.rate_bits
