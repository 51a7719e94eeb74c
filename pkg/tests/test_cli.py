import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from hardy_interp import cli

PROBLEMS = sorted((Path(__file__).resolve().parent.parent / "problems").glob("*.json"))
EXPECTED_EXIT = {"pick_infeasible": 2}


def run_main(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write_problem(tmp_path, problem, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(problem))
    return str(path)


@pytest.mark.parametrize("path", PROBLEMS, ids=[p.stem for p in PROBLEMS])
def test_example_problems(path, tmp_path, capsys):
    code, _, _ = run_main(["--input", str(path), "--out", str(tmp_path)], capsys)
    assert code == EXPECTED_EXIT.get(path.stem, 0)
    bundle = json.loads((tmp_path / "bundle.json").read_text())
    assert bundle["exit_code"] == code
    assert bundle["inputs_echo"] == json.loads(path.read_text())
    assert "total_seconds" not in json.dumps(bundle)
    assert (tmp_path / "timings.json").exists()


def test_bundles_are_deterministic(tmp_path, capsys):
    for path in PROBLEMS[:6]:
        texts = []
        for k in range(2):
            out = tmp_path / f"{path.stem}_{k}"
            run_main(["--input", str(path), "--out", str(out)], capsys)
            texts.append((out / "bundle.json").read_bytes())
        assert texts[0] == texts[1]


def test_pick_outputs(tmp_path, capsys):
    p = {"version": 1, "command": "pick",
         "payload": {"points": [0.0, 0.5], "targets": {"values": [0.0, 0.25]}}}
    code, out, _ = run_main(["--input", write_problem(tmp_path, p)], capsys)
    assert code == 0
    bundle = json.loads(out)
    assert bundle["exit_code"] == 0
    assert bundle["tool_version"] == cli.__version__


def test_csv_emission(capsys):
    path = str(next(p for p in PROBLEMS if p.stem == "diagnose_singular_inner"))
    code, out, _ = run_main(["--input", path, "--emit", "radial_decay"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "j,r,value"
    vals = np.array([float(line.split(",")[2]) for line in lines[1:]])
    assert np.max(np.abs(vals + 2.0)) <= 1e-6


def test_stdin_input(monkeypatch, capsys):
    problem = {"version": 1, "command": "sequence",
               "payload": {"points": {"family": "exponential", "ratio": 0.5, "count": 4}}}
    monkeypatch.setattr(sys, "stdin", __import__("io").StringIO(json.dumps(problem)))
    code, out, _ = run_main(["--input", "-"], capsys)
    assert code == 0 and json.loads(out)["inputs_echo"] == problem


@pytest.mark.parametrize("problem", [
    {"version": 1, "command": "sequence", "payload": {"points": [0.1]}, "extra": 1},
    {"version": 2, "command": "sequence", "payload": {"points": [0.1]}},
    {"version": 1, "command": "teleport", "payload": {}},
    {"version": 1, "command": "pick", "payload": {"points": [0.1], "targets": {"values": [0.1]}, "junk": 0}},
    {"version": 1, "command": "sequence", "payload": {"points": [1.5]}},
])
def test_invalid_problems_exit_1(problem, tmp_path, capsys):
    code, out, err = run_main(["--input", write_problem(tmp_path, problem)], capsys)
    assert code == 1 and out == "" and err


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, out, _ = run_main(["--input", str(path)], capsys)
    assert code == 1 and out == ""


def test_bad_flags(capsys):
    path = str(PROBLEMS[0])
    assert run_main(["--input", path, "--tol-override", "nonsense=1"], capsys)[0] == 1
    assert run_main(["--input", path, "--tol-override", "decay=-1"], capsys)[0] == 1
    assert run_main(["--input", path, "--emit", "nothing"], capsys)[0] == 1
    assert run_main(["--input", path, "--grid", "1000"], capsys)[0] == 1


def test_tolerance_override_is_recorded(capsys):
    path = str(next(p for p in PROBLEMS if p.stem == "diagnose_singular_inner"))
    code, out, _ = run_main(["--input", path, "--tol-override", "decay=0.5"], capsys)
    assert json.loads(out)["grid_parameters"]["tolerances"]["decay"] == 0.5


def test_jsonable_non_finite():
    out = cli.jsonable({"a": np.array([1.0, np.inf, -np.inf, np.nan]), "b": 1 + 2j})
    text = json.dumps(out)
    assert "Infinity" not in text and "NaN" not in text
    assert out["a"][0] == 1.0 and isinstance(out["a"][1], str)


def test_version_and_module_entry():
    res = subprocess.run([sys.executable, "-m", "hardy_interp", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == cli.__version__


def test_validate_problem_accepts_examples():
    for path in PROBLEMS:
        cli.validate_problem(json.loads(path.read_text()))


def test_infeasible_bundle_records_reason(capsys):
    path = str(next(p for p in PROBLEMS if p.stem == "pick_infeasible"))
    code, out, _ = run_main(["--input", path], capsys)
    bundle = json.loads(out)
    assert code == 2 and bundle["exit_code"] == 2
    assert bundle["outputs"]["pick"]["psd"] is False
    assert bundle["outputs"]["pick"]["min_eigenvalue"] < -1e-6
    assert "infeasible" in bundle["outputs"]
