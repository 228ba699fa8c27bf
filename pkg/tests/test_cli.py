import json
import subprocess
import sys

import numpy as np
import pytest

import epicurve as ec
from epicurve.chart import chart_spec_from_json, findings_json, lint_chart
from epicurve.fitseries import fit_logistic, fit_report_json
from epicurve.ingest import parse_timeseries, summary_table_csv


def run_cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "epicurve", *args],
                          capture_output=True, cwd=cwd)


# ------------------------------------------------------------------ simulate

def test_simulate_writes_conserving_trajectory(tmp_path):
    out = tmp_path / "traj.csv"
    res = run_cli("simulate", "--model", "sir", "--beta", "0.5", "--gamma",
                  "0.25", "--days", "50", "--step", "0.05", "--out", str(out))
    assert res.returncode == 0, res.stderr
    rows = np.loadtxt(out, delimiter=",", skiprows=1)
    assert rows.shape == (1001, 5)
    assert np.abs(rows[:, 1:].sum(axis=1) - 1.0).max() <= 1e-8


def test_simulate_stdout_matches_library():
    res = run_cli("simulate", "--model", "seirs", "--beta", "0.4", "--gamma",
                  "0.2", "--alpha", "0.1", "--xi", "0.01", "--days", "10")
    assert res.returncode == 0
    params = ec.ModelParams(beta=0.4, gamma=0.2, alpha=0.1, xi=0.01)
    traj = ec.integrate(ec.ModelKind.SEIRS, params, 10)
    assert res.stdout == traj.to_csv().encode()


def test_simulate_seir_defaults_latency_rate():
    res = run_cli("simulate", "--model", "seir", "--beta", "0.4", "--gamma",
                  "0.2", "--days", "5")
    assert res.returncode == 0
    params = ec.ModelParams(beta=0.4, gamma=0.2, alpha=1.0 / 14.0)
    traj = ec.integrate(ec.ModelKind.SEIR, params, 5)
    assert res.stdout == traj.to_csv().encode()


def test_simulate_usage_errors():
    assert run_cli("simulate", "--model", "sir", "--beta", "0.5",
                   "--gamma", "0.25", "--days", "5",
                   "--bogus", "1").returncode == 1
    assert run_cli("simulate", "--model", "sirs", "--beta", "0.5",
                   "--gamma", "0.25", "--days", "5").returncode == 1  # no --xi
    assert run_cli("bogus").returncode == 1


def test_simulate_invalid_params_is_data_error():
    res = run_cli("simulate", "--model", "sir", "--beta", "-1", "--gamma",
                  "0.25", "--days", "5")
    assert res.returncode == 2
    assert b"beta" in res.stderr


# ----------------------------------------------------------------------- fit

def test_fit_logistic_matches_library(tmp_path, fixtures_dir):
    out = tmp_path / "fit.json"
    res = run_cli("fit", "--model", "logistic", "--input",
                  str(fixtures_dir / "india_national.csv"), "--region",
                  "India", "--horizon", "30", "--out", str(out))
    assert res.returncode == 0, res.stderr
    series = parse_timeseries(
        (fixtures_dir / "india_national.csv").read_bytes())["India"]
    expected = fit_report_json(fit_logistic(series.total_confirmed),
                               horizon=30)
    assert out.read_text() == expected
    report = json.loads(out.read_text())
    assert report["model"] == "logistic" and report["n_points"] == 197


def test_fit_sir_requires_population(fixtures_dir):
    res = run_cli("fit", "--model", "sir", "--input",
                  str(fixtures_dir / "india_national.csv"), "--region",
                  "India")
    assert res.returncode == 1
    assert b"--population" in res.stderr


def test_fit_unknown_region_is_data_error(fixtures_dir):
    res = run_cli("fit", "--model", "logistic", "--input",
                  str(fixtures_dir / "india_national.csv"), "--region", "Oz")
    assert res.returncode == 2


# --------------------------------------------------------------------- stats

def test_stats_tiny_fixture(tmp_path, fixtures_dir):
    out = tmp_path / "stats.csv"
    res = run_cli("stats", "--input", str(fixtures_dir / "tiny.csv"),
                  "--out", str(out))
    assert res.returncode == 0, res.stderr
    text = out.read_text()
    series = parse_timeseries((fixtures_dir / "tiny.csv").read_bytes())["Demo"]
    assert text == summary_table_csv(series)
    rows = {line.split(",")[0]: line.split(",")[1:]
            for line in text.splitlines()[1:]}
    assert rows["Mean"][0] == "2"
    assert rows["Std"][0].startswith("1.5811")


def test_stats_region_required_when_ambiguous(fixtures_dir):
    res = run_cli("stats", "--input", str(fixtures_dir / "states.csv"))
    assert res.returncode == 1
    res = run_cli("stats", "--input", str(fixtures_dir / "states.csv"),
                  "--region", "Kerala")
    assert res.returncode == 0


def test_stats_missing_file_names_path():
    res = run_cli("stats", "--input", "no-such.csv")
    assert res.returncode == 2
    assert b"no-such.csv" in res.stderr


# ---------------------------------------------------------------------- plot

def test_plot_writes_svg_and_notes(tmp_path, fixtures_dir):
    out = tmp_path / "chart.svg"
    res = run_cli("plot", "--spec", str(fixtures_dir / "chart_dual.json"),
                  "--input", str(fixtures_dir / "states.csv"),
                  "--out", str(out))
    assert res.returncode == 0, res.stderr
    spec = chart_spec_from_json(
        (fixtures_dir / "chart_dual.json").read_bytes())
    data = parse_timeseries((fixtures_dir / "states.csv").read_bytes())
    assert out.read_bytes() == ec.render_chart(spec, data)
    assert b"note R" in res.stderr  # findings surface as stderr notes


def test_plot_bad_spec_is_data_error(tmp_path, fixtures_dir):
    bad = tmp_path / "spec.json"
    bad.write_text("{not json")
    res = run_cli("plot", "--spec", str(bad), "--input",
                  str(fixtures_dir / "states.csv"))
    assert res.returncode == 2


# ---------------------------------------------------------------------- lint

def test_lint_warning_exit_code_and_payload(fixtures_dir):
    res = run_cli("lint", "--spec",
                  str(fixtures_dir / "chart_linear_maharashtra.json"),
                  "--input", str(fixtures_dir / "states.csv"))
    assert res.returncode == 3
    spec = chart_spec_from_json(
        (fixtures_dir / "chart_linear_maharashtra.json").read_bytes())
    data = parse_timeseries((fixtures_dir / "states.csv").read_bytes())
    assert res.stdout.decode() == findings_json(lint_chart(spec, data))
    findings = json.loads(res.stdout)
    assert any(f["rule_id"] == "R1" and f["severity"] == "warning"
               for f in findings)


def test_lint_log_counterpart_has_no_warning(fixtures_dir):
    res = run_cli("lint", "--spec",
                  str(fixtures_dir / "chart_log_maharashtra.json"),
                  "--input", str(fixtures_dir / "states.csv"))
    assert res.returncode == 0
    assert all(f["severity"] != "warning" for f in json.loads(res.stdout))


def test_lint_alignment_note(fixtures_dir):
    res = run_cli("lint", "--spec",
                  str(fixtures_dir / "chart_days_since_p0.json"),
                  "--input", str(fixtures_dir / "two_states.csv"))
    assert res.returncode == 0  # notes only
    findings = json.loads(res.stdout)
    r3 = [f for f in findings if f["rule_id"] == "R3"]
    assert len(r3) == 1 and "+15d" in r3[0]["message"]


def test_lint_testing_note(fixtures_dir):
    res = run_cli("lint", "--spec", str(fixtures_dir / "chart_testing.json"),
                  "--input", str(fixtures_dir / "testing_demo.csv"))
    findings = json.loads(res.stdout)
    assert any(f["rule_id"] == "R4" for f in findings)
