import json

import numpy as np
import pytest
from click.testing import CliRunner

from fastdcor.cli import main
from fastdcor.io import read_matrix, write_csv


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def data_dir(tmp_path):
    rng = np.random.default_rng(21)
    x = rng.uniform(-1, 1, 60)
    y = x + 0.4 * rng.standard_normal(60)
    np.savetxt(tmp_path / "x.csv", x[:, None], delimiter=",")
    np.savetxt(tmp_path / "y.csv", y[:, None], delimiter=",")
    np.savetxt(tmp_path / "z.csv", rng.standard_normal((60, 1)), delimiter=",")
    np.savetxt(tmp_path / "g1.csv", rng.standard_normal((30, 1)), delimiter=",")
    np.savetxt(tmp_path / "g2.csv", rng.standard_normal((30, 1)) + 1.5, delimiter=",")
    return tmp_path


def _record(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.output.splitlines()[0])


def test_cli_test_chisq(runner, data_dir):
    result = runner.invoke(
        main,
        ["test", "--x", str(data_dir / "x.csv"), "--y", str(data_dir / "y.csv"),
         "--alpha", "0.05"],
    )
    record = _record(result)
    assert record["method"] == "chisq"
    assert record["pvalue"] < 0.05
    assert record["reject"] is True
    assert record["n"] == 60


def test_cli_test_perm_reproducible(runner, data_dir):
    args = ["test", "--x", str(data_dir / "x.csv"), "--y", str(data_dir / "y.csv"),
            "--method", "perm", "--reps", "100", "--seed", "7"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == 0 and second.exit_code == 0
    assert first.stdout_bytes == second.stdout_bytes


def test_cli_test_fast_flag(runner, data_dir):
    result = runner.invoke(
        main,
        ["test", "--x", str(data_dir / "x.csv"), "--y", str(data_dir / "y.csv"), "--fast"],
    )
    record = _record(result)
    assert record["pvalue"] < 0.05


def test_cli_ksample(runner, data_dir):
    result = runner.invoke(
        main,
        ["ksample", "--files", str(data_dir / "g1.csv"), "--files", str(data_dir / "g2.csv")],
    )
    record = _record(result)
    assert record["k"] == 2
    assert 0.0 <= record["pvalue"] <= 1.0


def test_cli_partial(runner, data_dir):
    result = runner.invoke(
        main,
        ["partial", "--x", str(data_dir / "x.csv"), "--y", str(data_dir / "y.csv"),
         "--z", str(data_dir / "z.csv")],
    )
    record = _record(result)
    assert record["pvalue"] < 0.05


def test_cli_power_with_csv_export(runner, tmp_path):
    out = tmp_path / "power.csv"
    result = runner.invoke(
        main,
        ["power", "--scenario", "linear", "--n", "30", "--n", "60",
         "--reps", "40", "--seed", "5", "--out", str(out)],
    )
    record = _record(result)
    assert len(record["results"]) == 2
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("scenario,n,p,method")
    assert len(lines) == 3
    assert float(lines[1].split(",")[6]) == record["results"][0]["power"]


def test_cli_nullsim_roundtrip(runner, tmp_path):
    out = tmp_path / "null.csv"
    result = runner.invoke(
        main,
        ["nullsim", "--scenario", "independent", "--n", "60",
         "--reps", "5000", "--seed", "3", "--out", str(out)],
    )
    record = _record(result)
    table = read_matrix(out)
    # the exported quantiles reparse to the exact values reported
    for prob, value in zip(table[:, 0], table[:, 1]):
        assert record["quantiles"][repr(float(prob))] == value


def test_cli_bench_ladder(runner):
    result = runner.invoke(main, ["bench", "--n", "4096", "--seed", "1"])
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines[0] == "n,seconds"
    sizes = [int(line.split(",")[0]) for line in lines[1:]]
    assert sizes == [1024, 2048, 4096]


def test_cli_missing_file_exit_code(runner, data_dir):
    result = runner.invoke(
        main, ["test", "--x", str(data_dir / "nope.csv"), "--y", str(data_dir / "y.csv")]
    )
    assert result.exit_code == 3


def test_cli_parse_error_exit_code(runner, tmp_path, data_dir):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\nnot-a-number,3\n")
    result = runner.invoke(
        main, ["test", "--x", str(bad), "--y", str(data_dir / "y.csv")]
    )
    assert result.exit_code == 4


def test_cli_dimension_mismatch_exit_code(runner, tmp_path, data_dir):
    short = tmp_path / "short.csv"
    np.savetxt(short, np.zeros((10, 1)), delimiter=",")
    result = runner.invoke(
        main, ["test", "--x", str(short), "--y", str(data_dir / "y.csv")]
    )
    assert result.exit_code == 4


def test_cli_usage_error_exit_code(runner):
    result = runner.invoke(main, ["test", "--bogus"])
    assert result.exit_code == 2


def test_cli_fast_on_multivariate_is_data_error(runner, tmp_path):
    wide = tmp_path / "wide.csv"
    np.savetxt(wide, np.random.default_rng(0).standard_normal((20, 2)), delimiter=",")
    same = tmp_path / "same.csv"
    np.savetxt(same, np.zeros((20, 1)), delimiter=",")
    result = runner.invoke(
        main, ["test", "--x", str(wide), "--y", str(same), "--fast"]
    )
    assert result.exit_code == 4


def test_read_matrix_header_autodetect(tmp_path):
    path = tmp_path / "h.csv"
    path.write_text("alpha,beta\n1.5,2.5\n3.5,4.5\n")
    np.testing.assert_array_equal(read_matrix(path), [[1.5, 2.5], [3.5, 4.5]])


def test_read_matrix_rejects_ragged(tmp_path):
    from fastdcor import ParseError

    path = tmp_path / "r.csv"
    path.write_text("1,2\n3\n")
    with pytest.raises(ParseError):
        read_matrix(path)


def test_csv_write_read_roundtrip(tmp_path):
    rng = np.random.default_rng(33)
    matrix = rng.standard_normal((7, 3)) * 10.0 ** rng.integers(-8, 8, (7, 3))
    path = tmp_path / "m.csv"
    write_csv(path, ["a", "b", "c"], matrix.tolist())
    back = read_matrix(path)
    np.testing.assert_array_equal(back, matrix)
