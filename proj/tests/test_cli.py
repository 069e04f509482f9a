"""Black-box checks of the lth command-line tool."""

import json
import os
import subprocess

import pytest

LTH = os.environ["LTH_BIN"]
DATA = os.environ["LTH_DATA"]


def run(*args, check=True):
    proc = subprocess.run([LTH, *args], capture_output=True, text=True)
    if check:
        assert proc.returncode == 0, proc.stderr
    return proc


def strip_timestamps(payload):
    doc = json.loads(payload)
    doc.get("manifest", {}).pop("timestamp", None)
    return doc


def test_hr_eval_standard_part():
    proc = run("hr", "eval", "st((1 + eps) * (1 - eps))")
    doc = strip_timestamps(proc.stdout)
    assert doc["standard_part"] == "1"
    assert doc["heuristic"] is False


def test_hr_eval_comparison():
    proc = run("hr", "eval", "eps < 1/1000")
    doc = strip_timestamps(proc.stdout)
    assert doc["boolean"] is True


def test_oracle_log_lines():
    proc = run("oracle", "log", "--eval", "omega > 5", "--horizon", "512")
    lines = [json.loads(l) for l in proc.stdout.strip().splitlines()]
    assert lines
    for entry in lines:
        assert set(entry) == {"label", "answer", "mode", "witness_count"}


def test_transfer_check():
    proc = run("transfer", "check", os.path.join(DATA, "basic.fml"), "--horizon", "512")
    verdicts = [json.loads(l)["holds"] for l in proc.stdout.strip().splitlines()]
    assert verdicts == [True, False, True, True, True, True]


def test_project_coefficient_count():
    proc = run("project", "--m", "4", "--f", "x*(1-x)")
    doc = strip_timestamps(proc.stdout)
    assert doc["basis"] == "hat"
    assert doc["m"] == 4
    assert len(doc["coeffs"]) == 3


def test_derive_roundtrip(tmp_path):
    coeffs = tmp_path / "u.json"
    coeffs.write_text(json.dumps({"basis": "hat", "m": 4, "coeffs": [0.25, 0.5, 0.25]}))
    proc = run("derive", "--coeffs", str(coeffs))
    doc = strip_timestamps(proc.stdout)
    assert len(doc["coeffs"]) == 3


def test_sweep_is_deterministic():
    args = ("variational", "sweep", "--elements", "2,4,8,16", "--starts", "2")
    first = strip_timestamps(run(*args).stdout)
    second = strip_timestamps(run(*args).stdout)
    assert first == second
    js = [level["j_value"] for level in first["levels"]]
    assert js == sorted(js, reverse=True)
    assert all(j > 0 for j in js)
    assert first["certificate"] == "PASS"


def test_sweep_csv_format():
    proc = run("variational", "sweep", "--elements", "2,4,8,16", "--starts", "1",
               "--format", "csv")
    lines = proc.stdout.strip().splitlines()
    assert lines[0].startswith("m,h,j_value")
    assert len(lines) == 5


def test_usage_error_exit_code():
    proc = run("variational", "sweep", check=False)
    assert proc.returncode == 2


def test_domain_error_exit_code():
    proc = run("variational", "sweep", "--elements", "3,5,7,9", check=False)
    assert proc.returncode == 1


def test_out_file(tmp_path):
    out = tmp_path / "result.json"
    run("hr", "eval", "st(1/2 + eps)", "--out", str(out))
    doc = json.loads(out.read_text())
    assert doc["standard_part"] == "1/2"
