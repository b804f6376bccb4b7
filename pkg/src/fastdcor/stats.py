"""Biased and bias-corrected distance covariance and correlation.

This is the general matrix path: it works for any dimension and for both
supported metrics.  For one-dimensional Euclidean data prefer the
O(n log n) implementations in :mod:`fastdcor.fast1d`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distance import EUCLIDEAN, MetricSpec, as_sample_matrix, double_center, pairwise_matrix, u_center
from .errors import InvalidInputError

__all__ = [
    "DcorValue",
    "dcov_unbiased",
    "dcor_unbiased",
    "dcor_biased",
    "dcor_from_pairwise",
]


@dataclass(frozen=True)
class DcorValue:
    """A distance covariance/correlation pair with its variance terms.

    ``degenerate`` is set when the correlation was forced to zero because
    the sample was too small or a distance variance was not strictly
    positive.
    """

    dcov: float
    dcor: float
    variance_x: float
    variance_y: float
    biased: bool
    degenerate: bool = False


def dcov_unbiased(cx: np.ndarray, cy: np.ndarray) -> float:
    """Bias-corrected distance covariance from two U-centered matrices.

    Equals ``trace(cx @ cy) / (n (n-3))``; since both matrices are
    symmetric this is computed as the elementwise-product sum.
    """
    cx = np.asarray(cx, dtype=np.float64)
    cy = np.asarray(cy, dtype=np.float64)
    if cx.shape != cy.shape or cx.ndim != 2 or cx.shape[0] != cx.shape[1]:
        raise InvalidInputError(
            f"matrices must be square and of equal shape, got {cx.shape} and {cy.shape}"
        )
    n = cx.shape[0]
    if n < 4:
        raise InvalidInputError(f"bias-corrected covariance needs n >= 4, got n={n}")
    return float((cx * cy).sum() / (n * (n - 3.0)))


def _ratio(dcov_xy: float, vx: float, vy: float) -> tuple[float, bool]:
    # correlation is defined only when the variance product is strictly positive
    denom_sq = vx * vy
    if not denom_sq > 0.0:
        return 0.0, True
    return dcov_xy / math.sqrt(denom_sq), False


def _variance_floor(d: np.ndarray, n: int) -> float:
    # some configurations (e.g. a binary sample with a single minority
    # point) have an exactly zero U-centered matrix, leaving only rounding
    # residue in the variance; anything below the centering noise floor is
    # treated as zero so the degenerate convention kicks in
    entry_noise = 16.0 * np.finfo(np.float64).eps * float(np.abs(d).max())
    return entry_noise * entry_noise * n / (n - 3.0)


def dcor_from_pairwise(dx: np.ndarray, dy: np.ndarray) -> DcorValue:
    """Bias-corrected correlation from two prebuilt pairwise matrices."""
    dx = np.asarray(dx, dtype=np.float64)
    dy = np.asarray(dy, dtype=np.float64)
    if dx.shape != dy.shape:
        raise InvalidInputError(f"pairwise shapes differ: {dx.shape} vs {dy.shape}")
    n = dx.shape[0]
    if n < 4:
        return DcorValue(0.0, 0.0, 0.0, 0.0, biased=False, degenerate=True)
    cx = u_center(dx)
    cy = u_center(dy)
    dxy = dcov_unbiased(cx, cy)
    vx = dcov_unbiased(cx, cx)
    vy = dcov_unbiased(cy, cy)
    if vx <= _variance_floor(dx, n):
        vx = 0.0
    if vy <= _variance_floor(dy, n):
        vy = 0.0
    dcor, degenerate = _ratio(dxy, vx, vy)
    return DcorValue(dxy, dcor, vx, vy, biased=False, degenerate=degenerate)


def dcor_unbiased(x, y, metric: MetricSpec = EUCLIDEAN) -> DcorValue:
    """Bias-corrected distance correlation of two samples.

    Returns a correlation in [-1, 1].  Per convention the correlation is 0
    when n < 4 or when the variance product is not strictly positive (for
    example when either sample is constant).
    """
    x = as_sample_matrix(x)
    y = as_sample_matrix(y)
    if x.shape[0] != y.shape[0]:
        raise InvalidInputError(
            f"samples must have equal length, got {x.shape[0]} and {y.shape[0]}"
        )
    if x.shape[0] < 4:
        return DcorValue(0.0, 0.0, 0.0, 0.0, biased=False, degenerate=True)
    return dcor_from_pairwise(pairwise_matrix(x, metric), pairwise_matrix(y, metric))


def dcor_biased(x, y, metric: MetricSpec = EUCLIDEAN) -> DcorValue:
    """Original (biased) distance correlation; values lie in [0, 1]."""
    x = as_sample_matrix(x)
    y = as_sample_matrix(y)
    if x.shape[0] != y.shape[0]:
        raise InvalidInputError(
            f"samples must have equal length, got {x.shape[0]} and {y.shape[0]}"
        )
    n = x.shape[0]
    ax = double_center(pairwise_matrix(x, metric))
    ay = double_center(pairwise_matrix(y, metric))
    dxy = float((ax * ay).sum() / (n * n))
    vx = float((ax * ax).sum() / (n * n))
    vy = float((ay * ay).sum() / (n * n))
    dcor, degenerate = _ratio(dxy, vx, vy)
    return DcorValue(dxy, dcor, vx, vy, biased=True, degenerate=degenerate)
