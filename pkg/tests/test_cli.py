"""Command-line interface: exit codes, output formats, determinism."""

import json

import pytest
from click.testing import CliRunner

from circtheta.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_theta_explicit_set(runner):
    res = runner.invoke(main, ["theta", "--n", "5", "--set", "1,4"])
    assert res.exit_code == 0
    assert "graph n=5;S=1,4" in res.output
    assert "theta = 2.236067977" in res.output


def test_theta_empty_set(runner):
    res = runner.invoke(main, ["theta", "--n", "7", "--set", ""])
    assert res.exit_code == 0
    assert "theta = 7.000000000" in res.output


def test_theta_json_certificate(runner):
    res = runner.invoke(main, ["theta", "--paley", "13", "--json"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["n"] == 13
    assert doc["connection_set"] == [1, 3, 4, 9, 10, 12]
    assert doc["theta"] == pytest.approx(13 ** 0.5, abs=1e-5)


def test_theta_set_file(runner, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("n=9\n2,3,6,7\n")
    res = runner.invoke(main, ["theta", "--set-file", str(path)])
    assert res.exit_code == 0
    assert "theta = 3.000000000" in res.output


def test_theta_random_is_seeded(runner):
    args = ["theta", "--n", "31", "--random", "--seed", "5"]
    out1 = runner.invoke(main, args).output
    out2 = runner.invoke(main, args).output
    assert out1 == out2
    other = runner.invoke(main, ["theta", "--n", "31", "--random", "--seed", "6"]).output
    assert out1 != other


def test_theta_usage_errors(runner):
    # no source
    assert runner.invoke(main, ["theta", "--n", "5"]).exit_code == 2
    # two sources
    res = runner.invoke(main, ["theta", "--n", "5", "--set", "1,4", "--paley", "13"])
    assert res.exit_code == 2
    # --set without --n
    assert runner.invoke(main, ["theta", "--set", "1,4"]).exit_code == 2
    # invalid graph data routes through usage errors too
    res = runner.invoke(main, ["theta", "--n", "8", "--set", "1,7"])
    assert res.exit_code == 2
    res = runner.invoke(main, ["theta", "--n", "9", "--set", "2,3"])
    assert res.exit_code == 2
    res = runner.invoke(main, ["theta", "--paley", "15"])
    assert res.exit_code == 2


def test_experiment_scaling_stdout_csv(runner):
    res = runner.invoke(
        main, ["experiment", "scaling", "--ns", "5", "--samples", "1", "--exhaustive"]
    )
    assert res.exit_code == 0
    lines = res.output.split("\n")
    assert lines[0] == "n,samples,theta_mean,theta_sd,ratio_mean,product_residual_max,wall_seconds"
    assert lines[1].split(",")[2] == "2.61803399"


def test_experiment_scaling_json(runner):
    res = runner.invoke(
        main,
        ["experiment", "scaling", "--ns", "19", "--samples", "3", "--format", "json"],
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc[0]["n"] == 19 and doc[0]["samples"] == 3


def test_experiment_out_file_and_determinism(runner, tmp_path):
    out = tmp_path / "tails.csv"
    args = [
        "experiment", "tails", "--ns", "31", "--samples", "10", "--out", str(out),
    ]
    res = runner.invoke(main, args)
    assert res.exit_code == 0
    assert f"wrote {out}" in res.output
    first = out.read_bytes()
    assert runner.invoke(main, args).exit_code == 0
    assert out.read_bytes() == first
    header = first.decode().split("\n")[0]
    assert header == (
        "n,samples,linf_violation_fraction,large_entry_fraction_mean,"
        "kernel_ratio_min,kernel_ratio_median,kernel_ratio_max"
    )


def test_experiment_kernel_ratio(runner):
    res = runner.invoke(
        main,
        ["experiment", "kernel-ratio", "--ns", "31", "--samples", "5",
         "--tail-constant", "1.5"],
    )
    assert res.exit_code == 0
    row = res.output.split("\n")[1].split(",")
    assert row[0] == "31" and row[1] == "5"
    assert float(row[4]) >= 1.0  # kernel ratio columns populated here


def test_experiment_usage_errors(runner):
    assert runner.invoke(main, ["experiment", "scaling", "--ns", "abc"]).exit_code == 2
    assert runner.invoke(main, ["experiment", "scaling", "--ns", "8"]).exit_code == 2
    assert runner.invoke(main, ["experiment", "tails", "--ns", "9"]).exit_code == 2
    res = runner.invoke(
        main, ["experiment", "scaling", "--ns", "5", "--format", "xml"]
    )
    assert res.exit_code == 2


def test_selftest_command(runner):
    res = runner.invoke(main, ["selftest"])
    assert res.exit_code == 0
    assert "PASS" in res.output
    assert "FAIL" not in res.output
