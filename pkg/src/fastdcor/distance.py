"""Pairwise distance/kernel matrices and the two centering schemes.

Samples are (n, d) float64 arrays with one observation per row.  Pairwise
matrices are dense (n, n) float64 arrays: zero diagonal for the Euclidean
metric, unit diagonal for the Gaussian kernel.  Both centering schemes
return dense symmetric matrices with (near) zero row and column sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import DegenerateDataError, InvalidInputError, SmallSampleError

__all__ = [
    "MetricSpec",
    "EUCLIDEAN",
    "as_sample_matrix",
    "pairwise_matrix",
    "median_bandwidth",
    "u_center",
    "double_center",
]


@dataclass(frozen=True)
class MetricSpec:
    """Distance or kernel used when building pairwise matrices.

    ``kind`` is ``"euclidean"`` or ``"gaussian"``.  For the Gaussian kernel
    an absent ``bandwidth`` means the median off-diagonal Euclidean distance
    of the sample at hand.
    """

    kind: str = "euclidean"
    bandwidth: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("euclidean", "gaussian"):
            raise InvalidInputError(f"unknown metric kind: {self.kind!r}")
        if self.bandwidth is not None and not self.bandwidth > 0:
            raise InvalidInputError("bandwidth must be a positive real")


EUCLIDEAN = MetricSpec("euclidean")


def as_sample_matrix(x) -> np.ndarray:
    """Coerce ``x`` to an (n, d) float64 matrix, one observation per row.

    1D input is treated as a single column.  Raises ``InvalidInputError``
    for empty or non-finite data.
    """
    out = np.asarray(x, dtype=np.float64)
    if out.ndim == 1:
        out = out[:, np.newaxis]
    if out.ndim != 2:
        raise InvalidInputError(f"expected a 1D or 2D sample, got ndim={out.ndim}")
    if out.shape[0] < 1 or out.shape[1] < 1:
        raise InvalidInputError(f"sample must be non-empty, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise InvalidInputError("sample contains non-finite values")
    return out


def median_bandwidth(x) -> float:
    """Median of the n(n-1)/2 off-diagonal pairwise Euclidean distances.

    Raises ``DegenerateDataError`` when the median distance is zero (more
    than half of all pairs coincide), since a zero bandwidth is unusable.
    """
    x = as_sample_matrix(x)
    if x.shape[0] < 2:
        raise InvalidInputError("need at least two observations for a bandwidth")
    dists = pdist(x)
    med = float(np.median(dists))
    if med <= 0.0:
        raise DegenerateDataError("median pairwise distance is zero")
    return med


def pairwise_matrix(x, metric: MetricSpec = EUCLIDEAN) -> np.ndarray:
    """Dense pairwise matrix of ``x`` under ``metric``.

    Euclidean: entries are ||x_i - x_j||_2.  Gaussian: entries are
    exp(-||x_i - x_j||^2 / (2 sigma^2)) with sigma the explicit bandwidth
    or the median heuristic.  Symmetric by construction.
    """
    x = as_sample_matrix(x)
    n = x.shape[0]
    if metric.kind == "euclidean":
        if n == 1:
            return np.zeros((1, 1))
        return squareform(pdist(x))
    sigma = metric.bandwidth
    if sigma is None:
        sigma = median_bandwidth(x)
    if n == 1:
        return np.ones((1, 1))
    sq = squareform(pdist(x, "sqeuclidean"))
    out = np.exp(sq / (-2.0 * sigma * sigma))
    np.fill_diagonal(out, 1.0)
    return out


def _checked_square(d) -> np.ndarray:
    d = np.asarray(d, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise InvalidInputError("matrix contains non-finite values")
    return d


def u_center(d) -> np.ndarray:
    """Bias-correcting centering with zero diagonal and zero row/column sums.

    Off-diagonal entries become
    ``d_ij - r_i/(n-2) - c_j/(n-2) + t/((n-1)(n-2))`` with ``r``/``c``/``t``
    the row/column/grand totals of ``d``; the diagonal is forced to zero.
    The diagonal of ``d`` is excluded from the totals so that the zero-sum
    identity also holds for kernel matrices with unit diagonal.
    """
    d = _checked_square(d)
    n = d.shape[0]
    if n < 4:
        raise SmallSampleError(f"centering needs n >= 4, got n={n}")
    off = d.copy()
    np.fill_diagonal(off, 0.0)
    rows = off.sum(axis=1)
    cols = off.sum(axis=0)
    total = rows.sum()
    out = (
        off
        - rows[:, np.newaxis] / (n - 2)
        - cols[np.newaxis, :] / (n - 2)
        + total / ((n - 1) * (n - 2))
    )
    np.fill_diagonal(out, 0.0)
    return out


def double_center(d) -> np.ndarray:
    """Classical centering: subtract row and column means, add the grand mean."""
    d = _checked_square(d)
    return d - d.mean(axis=1, keepdims=True) - d.mean(axis=0, keepdims=True) + d.mean()
