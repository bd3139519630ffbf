import csv
import io
import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("THERMOBOUND_CLI", "thermobound")


def run(*args, cwd=None):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, cwd=cwd)


def table(text):
    lines = text.splitlines()
    assert lines[0].startswith("# thermobound ")
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def test_qubit_sweep_figure_flags(tmp_path):
    out = tmp_path / "q.csv"
    r = run("qubit-sweep", "--hnorm", math.sqrt(61.0), "--gx", 4, "--gz", 1, "--T1", 10, "--T2", 15, "--sweep", "theta", "--out", out)
    assert r.returncode == 0, r.stderr
    text = out.read_text()
    assert text.splitlines()[1] == "theta,lower,exact,upper"
    rows = table(text)
    assert len(rows) == 200
    lower = [float(row["lower"]) for row in rows]
    assert lower.index(max(lower)) == 0
    assert float(rows[0]["theta"]) == 0.0


def test_generic_identical_specs_give_zero_row(tmp_path):
    spec = {"H": {"dim": 2, "re": [[1.0, 0.5], [0.5, -1.0]], "im": [[0.0, 0.25], [-0.25, 0.0]]}, "T": 2.0}
    path = tmp_path / "s.json"
    path.write_text(json.dumps(spec))
    r = run("generic", "--s1", path, "--s2", path)
    assert r.returncode == 0, r.stderr
    rows = table(r.stdout)
    assert len(rows) == 1
    assert all(float(v) == 0.0 for v in rows[0].values())


def test_oracle_prints_both_values():
    r = run("oracle", "--omega-t", 1.732, "--omega-tp", 1.414, "--T", 2.5, "--N", 400)
    assert r.returncode == 0, r.stderr
    row = table(r.stdout)[0]
    assert abs(float(row["closed"]) - float(row["fock"])) < 1e-6


def test_saved_inputs_reingest(tmp_path):
    first = run("generic", "--random", 5, "--seed", 11, "--save-inputs", tmp_path / "rt", "--bound", "helmholtz")
    assert first.returncode == 0, first.stderr
    again = run("generic", "--s1", tmp_path / "rt1.json", "--s2", tmp_path / "rt2.json", "--bound", "helmholtz")
    assert again.returncode == 0, again.stderr
    assert table(first.stdout) == table(again.stdout)


def test_output_is_reproducible_across_jobs(tmp_path):
    args = ["osc-invariant", "--t", 5, "--tprime", 10, "--T1grid", "5:20:8", "--T2grid", "5:20:8", "--out", tmp_path / "f.csv"]
    assert run(*args, "--jobs", 1).returncode == 0
    first = (tmp_path / "f.csv").read_bytes()
    assert run(*args, "--jobs", 3).returncode == 0
    assert (tmp_path / "f.csv").read_bytes() == first
    assert len(table(first.decode())) == 64


def test_json_lines_start_with_config():
    r = run("paul-trap", "--eta", 0.5, "--Omega", 2, "--t", 0.1, "--T1", 10, "--T2", 10, "--points", 5, "--format", "json")
    assert r.returncode == 0, r.stderr
    lines = [json.loads(line) for line in r.stdout.splitlines()]
    assert lines[0]["config"].startswith("thermobound paul-trap")
    assert len(lines) == 6
    assert set(lines[1]) == {"tprime", "lower", "exact", "upper", "omega_t", "omega_tprime"}


def test_gnuplot_script_references_csv(tmp_path):
    out = tmp_path / "fig2.csv"
    r = run("osc-physical", "--profile", "sqrt_linear", "--omega0", 1, "--T1", 10, "--T2", 10, "--tprime", 1, "--tmax", 10,
            "--out", out, "--gnuplot")
    assert r.returncode == 0, r.stderr
    assert str(out) in (tmp_path / "fig2.csv.gp").read_text()
    rows = table(out.read_text())
    assert len(rows) == 200
    for row in rows:
        t = float(row["t"])
        values = [float(row[k]) for k in ("lower", "exact", "upper")]
        if t < 1.0:
            assert all(v < 0 for v in values)
        if t > 1.0:
            assert all(v > 0 for v in values)


def test_sweep_check_passes():
    r = run("sweep-check", "--trials", 100, "--seed", 5)
    assert r.returncode == 0, r.stderr
    assert [row["status"] for row in table(r.stdout)] == ["pass"] * 4


@pytest.mark.parametrize(
    "args, code, kind",
    [
        (["qubit-sweep", "--T1", 1], 2, "usage"),
        (["bogus"], 2, "usage"),
        (["osc-invariant", "--t", 1, "--tprime", 2, "--T1grid", "1:2", "--T2", 1], 2, "usage"),
        (["oracle", "--omega-t", 1, "--omega-tp", 1, "--T", -1], 3, "domain"),
        (["paul-trap", "--eta", 1.5, "--Omega", 2, "--t", 0.1, "--T1", 10, "--T2", 10], 3, "domain"),
        (["oracle", "--omega-t", 3, "--omega-tp", 0.5, "--T", 50, "--N", 60], 4, "numerical"),
    ],
)
def test_errors_are_one_line(args, code, kind):
    r = run(*args)
    assert r.returncode == code
    lines = r.stderr.strip().splitlines()
    assert len(lines) == 1
    assert lines[0].startswith(f"thermobound: error={kind} exit={code} message=")
