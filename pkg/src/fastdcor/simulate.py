"""Scenario generators and Monte Carlo power estimation.

The scenario catalogue covers the standard benchmark relationships: four
one-dimensional shapes (linear, quadratic, spiral, independent), the
exponential family with Cauchy noise used for null-approximation studies,
and four increasing-dimension settings (equal variance, minimal variance,
dependent coordinates, varying marginals).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distance import EUCLIDEAN, MetricSpec
from .errors import InvalidInputError
from .inference import chisq_test, permutation_test, ttest

__all__ = ["KINDS", "Scenario", "PowerResult", "generate", "power_estimate", "default_n"]

KINDS = (
    "exponential",
    "linear",
    "quadratic",
    "spiral",
    "independent",
    "equal-variance",
    "minimal-variance",
    "dependent-coordinate",
    "varying-marginal",
)

_ONE_D = {"linear", "quadratic", "spiral", "independent"}
_DEFAULT_NOISE = {"linear": 1.0, "quadratic": 0.5, "spiral": 0.4, "exponential": 0.2}
# default sample sizes for the increasing-dimension suite
_DEFAULT_N = {
    "equal-variance": 20,
    "minimal-variance": 100,
    "dependent-coordinate": 50,
    "varying-marginal": 100,
}


def default_n(kind: str) -> int:
    """Conventional sample size for a scenario (100 unless fixed by the suite)."""
    return _DEFAULT_N.get(kind, 100)


@dataclass(frozen=True)
class Scenario:
    """A data-generating configuration.

    ``noise`` rescales the scenario's noise term and is only meaningful for
    the kinds that have one (linear, quadratic, spiral, exponential); None
    selects the standard coefficient.
    """

    kind: str
    n: int
    p: int = 1
    noise: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown scenario kind: {self.kind!r}")
        if self.n < 1:
            raise InvalidInputError(f"sample size must be positive, got {self.n}")
        if self.p < 1:
            raise InvalidInputError(f"dimension must be positive, got {self.p}")
        if self.kind in _ONE_D and self.p != 1:
            raise InvalidInputError(f"{self.kind} is one-dimensional; p must be 1")
        if self.noise is not None:
            if self.kind not in _DEFAULT_NOISE:
                raise InvalidInputError(f"{self.kind} has no noise coefficient")
            if self.noise < 0:
                raise InvalidInputError("noise coefficient must be nonnegative")


@dataclass(frozen=True)
class PowerResult:
    """Estimated rejection rate of a test on a scenario."""

    scenario: Scenario
    method: str
    alpha: float
    reps: int
    power: float
    stderr: float


def _standard_cauchy(rng: np.random.Generator, shape) -> np.ndarray:
    # ratio of independent standard normals; the heavy tails are the point
    return rng.standard_normal(shape) / rng.standard_normal(shape)


def generate(scenario: Scenario, seed=None) -> tuple[np.ndarray, np.ndarray]:
    """Draw one (x, y) dataset; same seed gives identical output."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    n, p, kind = scenario.n, scenario.p, scenario.kind
    noise = scenario.noise
    if noise is None:
        noise = _DEFAULT_NOISE.get(kind, 0.0)
    if kind == "linear":
        x = rng.uniform(-1.0, 1.0, (n, 1))
        y = x + noise * rng.standard_normal((n, 1))
    elif kind == "quadratic":
        x = rng.uniform(-1.0, 1.0, (n, 1))
        y = x**2 + noise * rng.standard_normal((n, 1))
    elif kind == "spiral":
        z = rng.normal(0.0, math.sqrt(5.0), (n, 1))
        x = z * np.cos(np.pi * z)
        y = z * np.sin(np.pi * z) + noise * rng.standard_normal((n, 1))
    elif kind == "independent":
        x = rng.standard_normal((n, 1)) / 3 + 2 * rng.integers(0, 2, (n, 1)) - 1
        y = rng.standard_normal((n, 1)) / 3 + 2 * rng.integers(0, 2, (n, 1)) - 1
    elif kind == "exponential":
        x = rng.uniform(-3.0, 1.0, (n, p))
        y = np.exp(x) + noise * _standard_cauchy(rng, (n, p))
    elif kind == "equal-variance":
        x = rng.uniform(-1.0, 1.0, (n, p))
        y = x[:, :1].copy()
    elif kind == "minimal-variance":
        x = rng.uniform(-1.0, 1.0, (n, p))
        if p > 20:
            x[:, 20:] /= p
        y = x[:, :1].copy()
    elif kind == "dependent-coordinate":
        x = np.empty((n, p))
        x[:, 0] = rng.uniform(-1.0, 1.0, n)
        for d in range(1, p):
            x[:, d] = 0.5 * x[:, d - 1] + rng.uniform(-0.5, 0.5, n)
        y = (x**2).sum(axis=1, keepdims=True)
    else:  # varying-marginal
        x = np.empty((n, p))
        for d in range(1, p + 1):
            x[:, d - 1] = rng.normal(d, math.sqrt(d), n)
        y = x[:, :1].copy()
    return x, y


def _normalize_method(method: str) -> str:
    aliases = {"perm": "permutation", "permutation": "permutation", "chisq": "chisq", "ttest": "ttest"}
    try:
        return aliases[method]
    except KeyError:
        raise InvalidInputError(f"unknown method: {method!r}") from None


def power_estimate(
    scenario: Scenario,
    method: str,
    alpha: float = 0.05,
    reps: int = 1000,
    seed=None,
    *,
    metric: MetricSpec = EUCLIDEAN,
    perm_reps: int = 500,
    threads: int | None = None,
) -> PowerResult:
    """Fraction of replicates on which the test rejects at level ``alpha``.

    Each replicate draws fresh data from a stream derived from
    ``(seed, replicate index)``, so the result does not depend on the
    execution schedule or on ``threads``.
    """
    if reps < 1:
        raise InvalidInputError(f"need at least one replicate, got reps={reps}")
    if not 0.0 < alpha < 1.0:
        raise InvalidInputError(f"alpha must be inside (0, 1), got {alpha}")
    method = _normalize_method(method)
    fast = metric.kind == "euclidean" and scenario.p == 1
    children = np.random.SeedSequence(seed).spawn(reps)

    def one(i: int) -> bool:
        data_rng = np.random.default_rng(children[i])
        x, y = generate(scenario, data_rng)
        if method == "chisq":
            result = chisq_test(x, y, metric, use_fast=fast)
        elif method == "ttest":
            result = ttest(x, y, metric, use_fast=fast)
        else:
            result = permutation_test(
                x, y, metric=metric, reps=perm_reps, seed=children[i].spawn(1)[0]
            )
        return result.pvalue < alpha

    rejected = np.zeros(reps, dtype=bool)
    if threads is not None and threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            for i, hit in enumerate(pool.map(one, range(reps))):
                rejected[i] = hit
    else:
        for i in range(reps):
            rejected[i] = one(i)
    power = float(rejected.mean())
    return PowerResult(
        scenario=scenario,
        method=method,
        alpha=alpha,
        reps=reps,
        power=power,
        stderr=math.sqrt(power * (1.0 - power) / reps),
    )
