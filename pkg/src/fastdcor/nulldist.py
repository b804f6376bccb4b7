"""Limiting null spectrum and reference-distribution diagnostics.

Under independence, n times the bias-corrected distance correlation
converges to sum_ij w_ij (N_ij^2 - 1) where the weights come from the
eigenvalues of the double-centered pairwise matrices scaled by 1/n and are
normalized so their squares sum to one.  The centered chi-square
distribution (chi2_1 - 1) dominates this law in the upper tail, which is
what makes the chi-square test valid; the helpers here simulate the
weighted law and locate the crossing points behind the dominance claims.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.stats import chi2, norm

from .distance import EUCLIDEAN, MetricSpec, as_sample_matrix, double_center, pairwise_matrix
from .errors import DegenerateDataError, InvalidInputError, NumericalError

__all__ = [
    "NullSpectrum",
    "NullSample",
    "spectrum",
    "simulate_null",
    "centered_chisq_cdf",
    "tail_crossing",
    "dominance_level",
    "normal_dominance_level",
]

_TRUNCATE_REL = 1e-12
_SIGN_TOL_REL = 1e-9


@dataclass(frozen=True)
class NullSpectrum:
    """Eigenvalue magnitudes of the two centered matrices and their weight grid.

    ``lam`` and ``mu`` hold the nonzero eigenvalue magnitudes in decreasing
    order; ``weights`` is their outer product normalized so the squared
    weights sum to one.  ``degenerate`` marks an empty spectrum (constant
    data on either side).
    """

    lam: np.ndarray
    mu: np.ndarray
    weights: np.ndarray
    degenerate: bool


@dataclass(frozen=True)
class NullSample:
    """Monte Carlo draws from the weighted centered chi-square law."""

    values: np.ndarray
    reps: int
    seed: int | None


def _side_spectrum(d: np.ndarray) -> tuple[float, np.ndarray]:
    # returns (dominant sign, decreasing magnitudes of the kept eigenvalues)
    n = d.shape[0]
    try:
        eig = np.linalg.eigvalsh(double_center(d) / n)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    scale = float(np.abs(eig).max()) if eig.size else 0.0
    if scale == 0.0:
        return 0.0, np.empty(0)
    kept = eig[np.abs(eig) > _TRUNCATE_REL * scale]
    if kept.size == 0:
        return 0.0, np.empty(0)
    sign = 1.0 if kept[np.argmax(np.abs(kept))] > 0 else -1.0
    if np.any(sign * kept < -_SIGN_TOL_REL * scale):
        raise NumericalError(
            "centered matrix has genuinely mixed-sign eigenvalues; "
            "the weighted null is not defined for this input"
        )
    return sign, np.sort(np.abs(kept))[::-1]


def spectrum(x, y, metric: MetricSpec = EUCLIDEAN) -> NullSpectrum:
    """Weight grid of the limiting null for the given pair of samples.

    Eigenvalues below 1e-12 of the largest magnitude are truncated to zero.
    For a distance metric both centered matrices are negative semidefinite
    and for a kernel both are positive semidefinite, so the eigenvalue
    products are nonnegative; genuine sign violations raise
    ``NumericalError``.
    """
    x = as_sample_matrix(x)
    y = as_sample_matrix(y)
    if x.shape[0] != y.shape[0]:
        raise InvalidInputError(
            f"samples must have equal length, got {x.shape[0]} and {y.shape[0]}"
        )
    if x.shape[0] < 4:
        raise InvalidInputError(f"spectrum needs n >= 4, got n={x.shape[0]}")
    sign_x, lam = _side_spectrum(pairwise_matrix(x, metric))
    sign_y, mu = _side_spectrum(pairwise_matrix(y, metric))
    if lam.size == 0 or mu.size == 0:
        return NullSpectrum(lam, mu, np.empty((lam.size, mu.size)), degenerate=True)
    if sign_x * sign_y < 0:
        raise NumericalError(
            "the two spectra have opposite signs; eigenvalue products would be negative"
        )
    weights = np.outer(lam, mu) / math.sqrt(
        float((lam**2).sum()) * float((mu**2).sum())
    )
    return NullSpectrum(lam, mu, weights, degenerate=False)


def simulate_null(
    spec: NullSpectrum, reps: int, seed=None, *, min_weight: float = 1e-6
) -> NullSample:
    """Draw from sum_ij w_ij (z_ij^2 - 1) with independent standard normals.

    Weights below ``min_weight`` are dropped and the rest rescaled so the
    squared weights still sum to one, which preserves mean 0 and variance 2.
    """
    if spec.degenerate:
        raise DegenerateDataError("cannot simulate from a degenerate spectrum")
    if reps < 1:
        raise InvalidInputError(f"need at least one draw, got reps={reps}")
    w = spec.weights.ravel()
    kept = w[w >= min_weight]
    if kept.size == 0:
        kept = w
    w = kept / math.sqrt(float((kept**2).sum()))
    rng = np.random.default_rng(seed)
    out = np.empty(reps)
    chunk = max(1, (1 << 24) // w.size)
    done = 0
    while done < reps:
        take = min(chunk, reps - done)
        z = rng.standard_normal((take, w.size))
        out[done : done + take] = (z * z - 1.0) @ w
        done += take
    return NullSample(out, reps, seed if isinstance(seed, int) else None)


def centered_chisq_cdf(x, m: int = 1):
    """CDF of (chi2_m - m) / sqrt(m); zero left of the support."""
    if m < 1:
        raise InvalidInputError(f"degree must be at least 1, got {m}")
    root = math.sqrt(m)
    return chi2.cdf(root * np.asarray(x, dtype=np.float64) + m, m)


def _refine_crossing(f, grid: np.ndarray, diff: np.ndarray, tol: float) -> float:
    neg = np.nonzero(diff < -tol)[0]
    if neg.size == 0:
        return float("nan")
    last = int(neg[-1])
    hi = last + 1
    while hi < grid.size and diff[hi] <= 0.0:
        hi += 1
    if hi >= grid.size:
        raise NumericalError("no upper crossing inside the search range")
    return float(brentq(f, grid[last], grid[hi], xtol=1e-9))


def tail_crossing(m: int) -> float:
    """Point beyond which (chi2_m - m)/sqrt(m) stays dominated by chi2_1 - 1.

    Locates the largest solution of F_m(x) = F_1(x) by a 1e-3 grid sweep
    over [-1, 50] refined with bisection; for all x beyond it
    F_m(x) >= F_1(x).
    """
    if m < 2:
        raise InvalidInputError(f"crossing is defined for m >= 2, got {m}")
    grid = np.arange(-1.0, 50.0 + 5e-4, 1e-3)
    diff = centered_chisq_cdf(grid, m) - centered_chisq_cdf(grid, 1)

    def f(t):
        return float(centered_chisq_cdf(t, m) - centered_chisq_cdf(t, 1))

    root = _refine_crossing(f, grid, diff, 0.0)
    if math.isnan(root):
        return float(grid[0])
    return root


def dominance_level(cdf, *, lo: float = -1.0, hi: float = 50.0) -> float:
    """Largest alpha at which ``cdf`` upper-tail dominates chi2_1 - 1.

    Returns the largest alpha such that cdf(x) >= F_{chi2_1 - 1}(x) for all
    x at or beyond the (1 - alpha) quantile of chi2_1 - 1.  When ``cdf``
    never drops below the reference on the search range the answer is
    capped by the range itself.
    """
    grid = np.arange(lo, hi + 5e-4, 1e-3)
    ref = centered_chisq_cdf(grid, 1)
    diff = np.asarray(cdf(grid), dtype=np.float64) - ref

    def f(t):
        return float(cdf(t) - centered_chisq_cdf(t, 1))

    crossing = _refine_crossing(f, grid, diff, 1e-13)
    if math.isnan(crossing):
        return float(1.0 - centered_chisq_cdf(lo, 1))
    return float(1.0 - centered_chisq_cdf(crossing, 1))


def normal_dominance_level() -> float:
    """Validity level of the N(0, 2) approximation against chi2_1 - 1."""
    scale = math.sqrt(2.0)
    return dominance_level(lambda t: norm.cdf(t, scale=scale))
