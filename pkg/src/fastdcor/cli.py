"""Command-line interface.

Each command prints a single JSON record to stdout (``bench`` reports CSV
instead) and a wall-time diagnostic to stderr, so stdout is byte-identical
across runs with the same seed.  Exit codes: 0 success, 2 usage, 3 I/O
failure, 4 data failure.
"""

from __future__ import annotations

import json
import time

import click
import numpy as np

from .distance import EUCLIDEAN, MetricSpec
from .errors import FastDcorError, ParseError
from .fast1d import fast_dcor_1d
from .inference import chisq_test, ksample_test, pdcor_test, permutation_test, ttest
from .io import format_csv, read_matrix, write_csv
from .nulldist import simulate_null, spectrum
from .simulate import KINDS, Scenario, default_n, generate, power_estimate

_QUANTILE_PROBS = (0.5, 0.75, 0.9, 0.95, 0.975, 0.99, 0.995, 0.999)


class _IOFailure(click.ClickException):
    exit_code = 3


class _DataFailure(click.ClickException):
    exit_code = 4


def _load(path: str) -> np.ndarray:
    try:
        return read_matrix(path)
    except FileNotFoundError:
        raise _IOFailure(f"file not found: {path}") from None
    except IsADirectoryError:
        raise _IOFailure(f"not a file: {path}") from None
    except PermissionError:
        raise _IOFailure(f"cannot read: {path}") from None
    except ParseError as exc:
        raise _DataFailure(str(exc)) from None
    except OSError as exc:
        raise _IOFailure(f"{path}: {exc}") from None


def _metric(kind: str, bandwidth: float | None) -> MetricSpec:
    if kind == "euclidean" and bandwidth is not None:
        raise click.UsageError("--bandwidth applies to the gaussian metric only")
    try:
        return MetricSpec(kind, bandwidth)
    except FastDcorError as exc:
        raise click.UsageError(str(exc)) from None


def _emit(record: dict, started: float) -> None:
    click.echo(json.dumps(record, sort_keys=True))
    click.echo(f"wall-time: {time.perf_counter() - started:.3f}s", err=True)


def _write_table(out, header, rows) -> None:
    try:
        write_csv(out, header, rows)
    except OSError as exc:
        raise _IOFailure(f"{out}: {exc}") from None


_metric_option = click.option(
    "--metric",
    "metric_kind",
    type=click.Choice(["euclidean", "gaussian"]),
    default="euclidean",
    show_default=True,
    help="Distance or kernel used for the statistic.",
)
_bandwidth_option = click.option(
    "--bandwidth", type=float, default=None, help="Gaussian kernel bandwidth (default: median distance)."
)
_seed_option = click.option("--seed", type=int, default=None, help="RNG seed for reproducible output.")
_alpha_option = click.option("--alpha", type=float, default=None, help="Report the reject decision at this level.")
_threads_option = click.option("--threads", type=int, default=None, help="Worker cap for Monte Carlo loops.")


@click.group()
@click.version_option(package_name="fastdcor")
def main() -> None:
    """Distance correlation independence testing."""


@main.command()
@click.option("--x", "x_path", required=True, help="CSV with the first sample.")
@click.option("--y", "y_path", required=True, help="CSV with the second sample.")
@_metric_option
@_bandwidth_option
@click.option(
    "--method",
    type=click.Choice(["chisq", "perm", "ttest"]),
    default="chisq",
    show_default=True,
)
@click.option("--reps", type=int, default=1000, show_default=True, help="Permutation count for --method perm.")
@_alpha_option
@_seed_option
@click.option("--fast", is_flag=True, help="Use the O(n log n) path (1D Euclidean only).")
@_threads_option
def test(x_path, y_path, metric_kind, bandwidth, method, reps, alpha, seed, fast, threads):
    """Test independence between the samples in --x and --y."""
    started = time.perf_counter()
    if fast and metric_kind != "euclidean":
        raise click.UsageError("--fast requires the euclidean metric")
    x = _load(x_path)
    y = _load(y_path)
    metric = _metric(metric_kind, bandwidth)
    try:
        if method == "chisq":
            result = chisq_test(x, y, metric, use_fast=fast)
        elif method == "ttest":
            result = ttest(x, y, metric, use_fast=fast)
        else:
            result = permutation_test(
                x, y, metric=metric, reps=reps, seed=seed, threads=threads
            )
    except FastDcorError as exc:
        raise _DataFailure(str(exc)) from None
    record = {
        "command": "test",
        "method": result.method,
        "metric": metric_kind,
        "statistic": result.statistic,
        "pvalue": result.pvalue,
        "n": result.n,
        "reps": result.reps,
        "seed": seed,
        "degenerate": result.degenerate,
    }
    if alpha is not None:
        record["alpha"] = alpha
        record["reject"] = bool(result.pvalue < alpha)
    _emit(record, started)


@main.command()
@click.option("--files", "paths", multiple=True, required=True, help="One CSV per group (repeat).")
@_metric_option
@_bandwidth_option
@click.option(
    "--method",
    type=click.Choice(["chisq", "perm", "ttest"]),
    default="chisq",
    show_default=True,
)
@click.option("--reps", type=int, default=1000, show_default=True)
@_alpha_option
@_seed_option
def ksample(paths, metric_kind, bandwidth, method, reps, alpha, seed):
    """Test whether the groups in --files share one distribution."""
    started = time.perf_counter()
    groups = [_load(p) for p in paths]
    metric = _metric(metric_kind, bandwidth)
    method_name = "permutation" if method == "perm" else method
    try:
        result = ksample_test(groups, metric, method_name, reps=reps, seed=seed)
    except FastDcorError as exc:
        raise _DataFailure(str(exc)) from None
    record = {
        "command": "ksample",
        "k": len(groups),
        "method": result.method,
        "metric": metric_kind,
        "statistic": result.statistic,
        "pvalue": result.pvalue,
        "n": result.n,
        "reps": result.reps,
        "seed": seed,
        "degenerate": result.degenerate,
    }
    if alpha is not None:
        record["alpha"] = alpha
        record["reject"] = bool(result.pvalue < alpha)
    _emit(record, started)


@main.command()
@click.option("--x", "x_path", required=True)
@click.option("--y", "y_path", required=True)
@click.option("--z", "z_path", required=True, help="CSV with the variable to partial out.")
@_metric_option
@_bandwidth_option
@_alpha_option
def partial(x_path, y_path, z_path, metric_kind, bandwidth, alpha):
    """Chi-square test of zero partial distance correlation of x and y given z."""
    started = time.perf_counter()
    x = _load(x_path)
    y = _load(y_path)
    z = _load(z_path)
    metric = _metric(metric_kind, bandwidth)
    try:
        result = pdcor_test(x, y, z, metric)
    except FastDcorError as exc:
        raise _DataFailure(str(exc)) from None
    record = {
        "command": "partial",
        "method": result.method,
        "metric": metric_kind,
        "statistic": result.statistic,
        "pvalue": result.pvalue,
        "n": result.n,
    }
    if alpha is not None:
        record["alpha"] = alpha
        record["reject"] = bool(result.pvalue < alpha)
    _emit(record, started)


@main.command()
@click.option("--scenario", "kind", type=click.Choice(KINDS), required=True)
@click.option("--n", "sizes", type=int, multiple=True, help="Sample size (repeat for a curve).")
@click.option("--p", type=int, default=1, show_default=True, help="Dimension of x where applicable.")
@_metric_option
@_bandwidth_option
@click.option(
    "--method",
    type=click.Choice(["chisq", "perm", "ttest"]),
    default="chisq",
    show_default=True,
)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--reps", type=int, default=1000, show_default=True, help="Monte Carlo replicates per size.")
@_seed_option
@_threads_option
@click.option("--out", type=str, default=None, help="Also write the rows as CSV.")
def power(kind, sizes, p, metric_kind, bandwidth, method, alpha, reps, seed, threads, out):
    """Estimate testing power over Monte Carlo replicates."""
    started = time.perf_counter()
    metric = _metric(metric_kind, bandwidth)
    if not sizes:
        sizes = (default_n(kind),)
    rows = []
    try:
        for n in sizes:
            result = power_estimate(
                Scenario(kind, n, p),
                method,
                alpha=alpha,
                reps=reps,
                seed=seed,
                metric=metric,
                threads=threads,
            )
            rows.append(
                {
                    "scenario": kind,
                    "n": n,
                    "p": p,
                    "method": result.method,
                    "alpha": alpha,
                    "reps": reps,
                    "power": result.power,
                    "stderr": result.stderr,
                }
            )
    except FastDcorError as exc:
        raise _DataFailure(str(exc)) from None
    if out is not None:
        header = ["scenario", "n", "p", "method", "alpha", "reps", "power", "stderr"]
        _write_table(out, header, [[r[k] for k in header] for r in rows])
    _emit({"command": "power", "metric": metric_kind, "seed": seed, "results": rows}, started)


@main.command()
@click.option("--x", "x_path", default=None, help="CSV with the first sample.")
@click.option("--y", "y_path", default=None, help="CSV with the second sample.")
@click.option("--scenario", "kind", type=click.Choice(KINDS), default=None, help="Generate data instead of reading files.")
@click.option("--n", type=int, default=None, help="Sample size for --scenario.")
@click.option("--p", type=int, default=1, show_default=True)
@_metric_option
@_bandwidth_option
@click.option("--reps", type=int, default=100_000, show_default=True, help="Monte Carlo draws from the weighted null.")
@_seed_option
@click.option("--out", type=str, default=None, help="Write the quantile table as CSV.")
def nullsim(x_path, y_path, kind, n, p, metric_kind, bandwidth, reps, seed, out):
    """Simulate the limiting null implied by a dataset's spectrum."""
    started = time.perf_counter()
    metric = _metric(metric_kind, bandwidth)
    if kind is None:
        if x_path is None or y_path is None:
            raise click.UsageError("provide either --scenario or both --x and --y")
        x = _load(x_path)
        y = _load(y_path)
    try:
        if kind is not None:
            x, y = generate(Scenario(kind, n or default_n(kind), p), seed)
        spec = spectrum(x, y, metric)
        sample = simulate_null(spec, reps, seed)
    except FastDcorError as exc:
        raise _DataFailure(str(exc)) from None
    quantiles = np.quantile(sample.values, _QUANTILE_PROBS)
    if out is not None:
        _write_table(out, ["prob", "quantile"], list(zip(_QUANTILE_PROBS, quantiles)))
    record = {
        "command": "nullsim",
        "metric": metric_kind,
        "n": int(x.shape[0]),
        "reps": reps,
        "seed": seed,
        "eigs_x": int(spec.lam.size),
        "eigs_y": int(spec.mu.size),
        "leading_weight": float(spec.weights.max()),
        "mean": float(sample.values.mean()),
        "variance": float(sample.values.var()),
        "quantiles": {str(q): float(v) for q, v in zip(_QUANTILE_PROBS, quantiles)},
    }
    _emit(record, started)


@main.command()
@click.option("--n", type=int, default=1 << 19, show_default=True, help="Largest size of the doubling ladder.")
@_seed_option
@click.option("--out", type=str, default=None, help="Write the timing table as CSV.")
def bench(n, seed, out):
    """Time the fast-path chi-square test over an n-doubling ladder (CSV)."""
    if n < 1024:
        raise click.UsageError("--n must be at least 1024")
    rng = np.random.default_rng(seed)
    # warm-up also triggers JIT compilation
    w = rng.standard_normal(2048)
    fast_dcor_1d(w, w + rng.standard_normal(2048))
    rows = []
    size = 1024
    while size <= n:
        x = rng.uniform(-1.0, 1.0, size)
        y = x + rng.standard_normal(size)
        best = float("inf")
        for _ in range(3):
            t0 = time.perf_counter()
            chisq_test(x, y, EUCLIDEAN, use_fast=True)
            best = min(best, time.perf_counter() - t0)
        rows.append((size, best))
        size *= 2
    text = format_csv(["n", "seconds"], rows)
    if out is not None:
        _write_table(out, ["n", "seconds"], rows)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
