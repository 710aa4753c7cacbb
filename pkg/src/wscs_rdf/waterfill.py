"""Reverse water-filling for a periodic family of Gaussian variances.

Given one period of per-sample variances ``s2[0..N-1]`` and a mean-square
distortion budget ``D``, the optimal allocation puts distortion
``d[m] = min(s2[m], theta)`` on each component, with the water level
``theta`` chosen so that ``mean(d) = D``.  The resulting rate is

    R(D) = mean(0.5 * log2(s2[m] / d[m]))        [bits per sample]

which is zero once ``D`` reaches the mean variance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError
from .variance import DtVariancePeriod

__all__ = [
    "WaterfillSolution",
    "distortion_from_theta",
    "solve_reverse_waterfill",
    "rate_from_solution",
]

DEFAULT_TOL = 1e-10
MAX_BISECTION_STEPS = 200


def _as_variances(variances) -> np.ndarray:
    if isinstance(variances, DtVariancePeriod):
        return variances.values
    arr = np.asarray(variances, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("variances must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("variances must be finite and strictly positive")
    return arr


@dataclass(frozen=True)
class WaterfillSolution:
    """Water level, per-component distortions and the resulting rate.

    Attributes
    ----------
    theta : float
        Water level.
    per_component_distortion : np.ndarray
        ``d[m] = min(s2[m], theta)`` (all of ``s2`` in the zero-rate regime).
    rate_bits : float
        Bits per sample, ``>= 0``.
    achieved_distortion : float
        ``mean(per_component_distortion)``; matches the requested budget to
        solver tolerance whenever the budget is below the mean variance.
    """

    theta: float
    per_component_distortion: np.ndarray
    rate_bits: float
    achieved_distortion: float


def distortion_from_theta(variances, theta: float) -> float:
    """Average distortion ``mean(min(s2[m], theta))`` for a water level.

    Nondecreasing and continuous in ``theta``; saturates at the mean
    variance once ``theta`` clears every component.
    """
    if not (theta >= 0.0):
        raise DomainError(f"water level must be >= 0, got {theta}")
    arr = _as_variances(variances)
    return float(np.minimum(arr, theta).mean())


def rate_from_solution(variances, solution: WaterfillSolution) -> float:
    """Re-evaluate the rate formula for a solution (bits per sample).

    Deterministic: calling this on a solver output reproduces its
    ``rate_bits`` exactly.
    """
    arr = _as_variances(variances)
    d = np.asarray(solution.per_component_distortion, dtype=float)
    if d.shape != arr.shape:
        raise DomainError(f"distortion vector length {d.size} does not match {arr.size} variances")
    return float(np.mean(0.5 * np.log2(arr / d)))


def solve_reverse_waterfill(
    variances,
    distortion: float,
    tol: float = DEFAULT_TOL,
    max_steps: int = MAX_BISECTION_STEPS,
) -> WaterfillSolution:
    """Find the water level meeting a distortion budget and the rate it buys.

    Parameters
    ----------
    variances : DtVariancePeriod or array-like
        One period of per-sample variances, strictly positive.
    distortion : float
        Mean-square distortion budget ``D > 0``.
    tol : float
        Relative tolerance on the achieved distortion, ``|mean(d) - D| <= tol*D``.

    Notes
    -----
    Three regimes:

    * ``D >= mean(s2)``: zero rate, every component fully distorted.
    * ``D <= min(s2)``: every component sits below the water line, so
      ``theta = D`` exactly and no search is needed.
    * otherwise: bisection on ``[0, max(s2)]``, which always converges
      because the distortion is monotone and continuous in ``theta``.
    """
    arr = _as_variances(variances)
    if not (distortion > 0.0) or not math.isfinite(distortion):
        raise DomainError(f"distortion budget must be positive and finite, got {distortion}")

    mean_var = float(arr.mean())
    if distortion >= mean_var:
        d = arr.copy()
        d.flags.writeable = False
        return WaterfillSolution(float(distortion), d, 0.0, mean_var)

    if distortion <= float(arr.min()):
        theta = float(distortion)
        d = np.full_like(arr, theta)
    else:
        lo, hi = 0.0, float(arr.max())
        theta = distortion
        for _ in range(max_steps):
            mid = 0.5 * (lo + hi)
            err = float(np.minimum(arr, mid).mean()) - distortion
            if abs(err) <= tol * distortion:
                theta = mid
                break
            if err < 0.0:
                lo = mid
            else:
                hi = mid
        else:
            raise NumericError(
                f"water-level bisection did not reach |err| <= {tol:g}*D in {max_steps} steps"
            )
        d = np.minimum(arr, theta)

    d.flags.writeable = False
    sol = WaterfillSolution(theta, d, 0.0, float(d.mean()))
    rate = rate_from_solution(arr, sol)
    return WaterfillSolution(theta, d, rate, sol.achieved_distortion)
