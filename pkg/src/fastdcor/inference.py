"""Hypothesis tests built on the bias-corrected distance correlation.

Three p-value routes are provided: the chi-square approximation (fast and
valid for alpha <= 0.05), the random-permutation benchmark, and the normal
tail used by the classical t-style test.  The same statistic machinery
also powers the K-sample reduction and the partial (conditioning) variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import erfc

from .distance import EUCLIDEAN, MetricSpec, as_sample_matrix, pairwise_matrix, u_center
from .errors import InvalidInputError, SmallSampleError, UnsupportedPathError
from .fast1d import _perm_dcov_batch, _sorted_row_sums, fast_dcor_1d, triple_sums_1d
from .stats import DcorValue, dcor_from_pairwise, dcor_unbiased

__all__ = [
    "TestResult",
    "chisq_pvalue",
    "chisq_test",
    "permutation_test",
    "ttest",
    "ksample_encode",
    "ksample_test",
    "pdcor",
    "pdcor_test",
]

# chunk bound for materialising permutation index matrices
_PERM_CHUNK_ENTRIES = 1 << 25


@dataclass(frozen=True)
class TestResult:
    """Outcome of an independence test."""

    statistic: float
    pvalue: float
    n: int
    method: str
    reps: int | None = None
    seed: int | None = None
    degenerate: bool = False


def _statistic(x, y, metric: MetricSpec, use_fast: bool) -> tuple[DcorValue, int]:
    x = as_sample_matrix(x)
    y = as_sample_matrix(y)
    if x.shape[0] != y.shape[0]:
        raise InvalidInputError(
            f"samples must have equal length, got {x.shape[0]} and {y.shape[0]}"
        )
    if use_fast:
        if metric.kind != "euclidean":
            raise UnsupportedPathError("the fast path supports the Euclidean metric only")
        return fast_dcor_1d(x, y), x.shape[0]
    return dcor_unbiased(x, y, metric), x.shape[0]


def chisq_pvalue(c: float, n: int) -> float:
    """Upper-tail probability of ``n * c`` under the centered chi-square law.

    Equals ``1 - F(n c + 1)`` with ``F`` the chi-square CDF of degree one;
    arguments left of the support yield 1.
    """
    if not np.isfinite(c):
        raise InvalidInputError("statistic must be finite")
    if n < 1:
        raise InvalidInputError(f"sample size must be positive, got {n}")
    arg = n * float(c) + 1.0
    if arg <= 0.0:
        return 1.0
    # chi-square survival of degree one via the complementary error function
    return float(erfc(math.sqrt(arg / 2.0)))


def chisq_test(
    x, y, metric: MetricSpec = EUCLIDEAN, use_fast: bool = False
) -> TestResult:
    """Chi-square independence test on the bias-corrected correlation.

    ``use_fast`` switches to the O(n log n) path and is permitted only for
    one-dimensional Euclidean data.  The rejection decision is left to the
    caller; validity holds for alpha <= 0.05 once n is around 20 or more.
    """
    value, n = _statistic(x, y, metric, use_fast)
    return TestResult(
        statistic=value.dcor,
        pvalue=chisq_pvalue(value.dcor, n),
        n=n,
        method="chisq",
        degenerate=value.degenerate,
    )


def ttest(x, y, metric: MetricSpec = EUCLIDEAN, use_fast: bool = False) -> TestResult:
    """One-sided test against the N(0, 2) large-sample approximation.

    The statistic ``sqrt(n^2 - 3n - 2) * dcor`` is referred to the upper
    tail of N(0, 2).  Slightly anti-conservative outside the
    high-dimensional regime; see the chi-square test for a valid default.
    """
    x = as_sample_matrix(x)
    y = as_sample_matrix(y)
    n = x.shape[0]
    scale_sq = n * n - 3.0 * n - 2.0
    if scale_sq <= 0.0:
        raise SmallSampleError(f"t-test needs n >= 4, got n={n}")
    value, n = _statistic(x, y, metric, use_fast)
    t = math.sqrt(scale_sq) * value.dcor
    return TestResult(
        statistic=value.dcor,
        pvalue=float(0.5 * erfc(t / 2.0)),
        n=n,
        method="ttest",
        degenerate=value.degenerate,
    )


def _iter_perm_blocks(rng: np.random.Generator, reps: int, n: int):
    block = max(1, _PERM_CHUNK_ENTRIES // max(n, 1))
    done = 0
    while done < reps:
        take = min(block, reps - done)
        yield np.argsort(rng.random((take, n)), axis=1)
        done += take


def _perm_dcov_matrix(cx: np.ndarray, cy: np.ndarray, perms: np.ndarray) -> np.ndarray:
    # centering commutes with relabeling, so permuting rows of x only
    # conjugates its U-centered matrix
    n = cx.shape[0]
    out = np.empty(perms.shape[0])
    for s, p in enumerate(perms):
        out[s] = (cx[np.ix_(p, p)] * cy).sum() / (n * (n - 3.0))
    return out


def permutation_test(
    x,
    y,
    stat: Callable[[np.ndarray, np.ndarray], float] | None = None,
    *,
    metric: MetricSpec = EUCLIDEAN,
    reps: int = 1000,
    seed=None,
    smoothed: bool = False,
    threads: int | None = None,
) -> TestResult:
    """Random-permutation independence test.

    Permutes the row order of ``x`` for ``reps`` independent uniform draws
    and reports the fraction of permuted statistics strictly exceeding the
    observed one.  With ``smoothed`` the add-one estimator
    ``(count + 1) / (reps + 1)`` is used instead.  ``stat`` may be any
    dependence statistic ``f(x_permuted, y) -> float``; the default is the
    bias-corrected distance correlation, whose permutation p-value is
    computed on the covariance scale (the correlation denominator is
    permutation invariant, so the p-values coincide).

    Results are reproducible bit for bit given ``seed`` and do not depend
    on ``threads``.
    """
    if reps < 1:
        raise InvalidInputError(f"need at least one permutation, got reps={reps}")
    x = as_sample_matrix(x)
    y = as_sample_matrix(y)
    if x.shape[0] != y.shape[0]:
        raise InvalidInputError(
            f"samples must have equal length, got {x.shape[0]} and {y.shape[0]}"
        )
    n = x.shape[0]
    rng = np.random.default_rng(seed)
    seed_field = seed if isinstance(seed, int) else None

    if stat is not None:
        observed = float(stat(x, y))
        permuted = np.empty(reps)
        done = 0
        for perms in _iter_perm_blocks(rng, reps, n):
            block = perms.shape[0]
            if threads is not None and threads > 1:
                from concurrent.futures import ThreadPoolExecutor

                def one(s):
                    return stat(x[perms[s]], y)

                with ThreadPoolExecutor(max_workers=threads) as pool:
                    permuted[done : done + block] = list(pool.map(one, range(block)))
            else:
                for s in range(block):
                    permuted[done + s] = stat(x[perms[s]], y)
            done += block
        count = int((permuted > observed).sum())
        pvalue = (count + 1) / (reps + 1) if smoothed else count / reps
        return TestResult(observed, float(pvalue), n, "permutation", reps, seed_field)

    fast_ok = (
        n >= 4
        and metric.kind == "euclidean"
        and x.shape[1] == 1
        and y.shape[1] == 1
    )
    if fast_ok:
        value = fast_dcor_1d(x, y)
    else:
        value = dcor_unbiased(x, y, metric)
    if n < 4:
        # everything is zero by the small-sample convention
        count = 0
    elif fast_ok:
        xv = x[:, 0]
        yv = y[:, 0]
        if np.all(xv == xv[0]) or np.all(yv == yv[0]):
            # one distance matrix vanishes, so every permuted value ties at 0
            count = 0
        else:
            order = np.argsort(xv)
            xs = xv[order]
            arow = np.empty(n)
            arow[order] = _sorted_row_sums(xs)
            yorder = np.argsort(yv)
            brow = np.empty(n)
            brow[yorder] = _sorted_row_sums(yv[yorder])
            sums = triple_sums_1d(xv, yv)
            count = 0
            for perms in _iter_perm_blocks(rng, reps, n):
                out = np.empty(perms.shape[0])
                _perm_dcov_batch(xs, order, yv, arow, brow, sums.t3, perms, out)
                count += int((out > value.dcov).sum())
    else:
        cx = u_center(pairwise_matrix(x, metric))
        cy = u_center(pairwise_matrix(y, metric))
        count = 0
        for perms in _iter_perm_blocks(rng, reps, n):
            out = _perm_dcov_matrix(cx, cy, perms)
            count += int((out > value.dcov).sum())
    pvalue = (count + 1) / (reps + 1) if smoothed else count / reps
    return TestResult(
        statistic=value.dcor,
        pvalue=float(pvalue),
        n=n,
        method="permutation",
        reps=reps,
        seed=seed_field,
        degenerate=value.degenerate,
    )


def ksample_encode(groups: Sequence) -> tuple[np.ndarray, np.ndarray]:
    """Stack K samples and build the one-hot label matrix.

    Returns ``(x, y)`` where ``x`` is the row-wise concatenation of the
    groups and ``y`` is the (n, K) indicator of group membership.
    """
    mats = [as_sample_matrix(g) for g in groups]
    if len(mats) < 2:
        raise InvalidInputError(f"need at least two groups, got {len(mats)}")
    d = mats[0].shape[1]
    if any(m.shape[1] != d for m in mats):
        dims = [m.shape[1] for m in mats]
        raise InvalidInputError(f"groups disagree on dimension: {dims}")
    x = np.vstack(mats)
    y = np.zeros((x.shape[0], len(mats)))
    row = 0
    for k, m in enumerate(mats):
        y[row : row + m.shape[0], k] = 1.0
        row += m.shape[0]
    return x, y


def ksample_test(
    groups: Sequence,
    metric: MetricSpec = EUCLIDEAN,
    method: str = "chisq",
    *,
    reps: int = 1000,
    seed=None,
    smoothed: bool = False,
) -> TestResult:
    """Test equality of K distributions via the one-hot encoding.

    The stacked sample is correlated against its group indicator; the
    indicator side always uses the Euclidean distance.
    """
    x, y = ksample_encode(groups)
    n = x.shape[0]
    if method == "permutation":
        if metric.kind == "euclidean":
            return permutation_test(x, y, reps=reps, seed=seed, smoothed=smoothed)

        def stat(xp, yp):
            return dcor_from_pairwise(
                pairwise_matrix(xp, metric), pairwise_matrix(yp, EUCLIDEAN)
            ).dcor

        return permutation_test(x, y, stat, reps=reps, seed=seed, smoothed=smoothed)
    if n < 4:
        value = DcorValue(0.0, 0.0, 0.0, 0.0, biased=False, degenerate=True)
    else:
        value = dcor_from_pairwise(
            pairwise_matrix(x, metric), pairwise_matrix(y, EUCLIDEAN)
        )
    if method == "chisq":
        return TestResult(
            value.dcor, chisq_pvalue(value.dcor, n), n, "chisq", degenerate=value.degenerate
        )
    if method == "ttest":
        scale_sq = n * n - 3.0 * n - 2.0
        if scale_sq <= 0.0:
            raise SmallSampleError(f"t-test needs n >= 4, got n={n}")
        t = math.sqrt(scale_sq) * value.dcor
        pvalue = float(0.5 * erfc(t / 2.0))
        return TestResult(value.dcor, pvalue, n, "ttest", degenerate=value.degenerate)
    raise InvalidInputError(f"unknown method: {method!r}")


def pdcor(x, y, z, metric: MetricSpec = EUCLIDEAN) -> float:
    """Partial distance correlation of x and y after removing z.

    The U-centered matrices of x and y are projected onto the orthogonal
    complement of z's U-centered matrix under the inner product
    ``<P, Q> = sum_ij P_ij Q_ij / (n (n-3))`` and the cosine of the
    projections is returned.  When z carries no variation the projection
    is skipped, and a vanishing projected norm yields 0.
    """
    mats = [as_sample_matrix(v) for v in (x, y, z)]
    n = mats[0].shape[0]
    if any(m.shape[0] != n for m in mats):
        sizes = [m.shape[0] for m in mats]
        raise InvalidInputError(f"samples must have equal length, got {sizes}")
    if n < 4:
        raise SmallSampleError(f"partial correlation needs n >= 4, got n={n}")
    dz = pairwise_matrix(mats[2], metric)
    cz = u_center(dz)
    cx = u_center(pairwise_matrix(mats[0], metric))
    cy = u_center(pairwise_matrix(mats[1], metric))
    scale = n * (n - 3.0)

    def ip(a, b):
        return float((a * b).sum() / scale)

    # a numerically constant z leaves only rounding residue in cz
    z_spread = float(np.abs(dz).max())
    if np.abs(cz).max() > 1e-13 * z_spread:
        czz = ip(cz, cz)
        if czz > 0.0:
            cx = cx - (ip(cx, cz) / czz) * cz
            cy = cy - (ip(cy, cz) / czz) * cz
    nx = ip(cx, cx)
    ny = ip(cy, cy)
    if nx <= 0.0 or ny <= 0.0:
        return 0.0
    r = ip(cx, cy) / math.sqrt(nx * ny)
    return min(1.0, max(-1.0, r))


def pdcor_test(x, y, z, metric: MetricSpec = EUCLIDEAN) -> TestResult:
    """Chi-square test of zero partial distance correlation."""
    statistic = pdcor(x, y, z, metric)
    n = as_sample_matrix(x).shape[0]
    return TestResult(statistic, chisq_pvalue(statistic, n), n, "chisq")
