import json
import subprocess
import sys

import pytest

from supercircle.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.mark.parametrize("k", ["1,0", "-1,0", "0,1", "2,1"])
def test_verify_group_axioms(capsys, k):
    code, out, err = run(capsys, "verify", "group-axioms", "--k", k, "--trials", "20")
    assert code == 0
    recs = records(out)
    assert {r["check"] for r in recs} == {"associativity", "unit", "inverse"}
    assert all(r["status"] == "pass" for r in recs)
    assert "3 passed, 0 failed" in err


def test_verify_degenerate_k_skips_inverse(capsys):
    code, out, _ = run(capsys, "verify", "group-axioms", "--k", "0,0", "--trials", "10")
    assert code == 0
    status = {r["check"]: r["status"] for r in records(out)}
    assert status["inverse"] == "skip" and status["associativity"] == "pass"


def test_verify_is_deterministic(capsys):
    a = run(capsys, "verify", "reps", "--seed", "5", "--trials", "10")
    b = run(capsys, "verify", "reps", "--seed", "5", "--trials", "10")
    assert a == b and a[0] == 0


def test_verify_float_backend(capsys):
    code, out, _ = run(capsys, "verify", "real-structures", "--backend", "float", "--k", "0.3,-2",
                       "--trials", "10")
    assert code == 0
    assert all(r["params"]["backend"] == "float" for r in records(out))


@pytest.mark.parametrize("suite", ["susy", "lie-brackets", "berezinian"])
def test_other_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", suite, "--k", "2,1", "--trials", "10")
    assert code == 0
    assert records(out) and all(r["status"] in ("pass", "skip") for r in records(out))


def test_verify_writes_file(capsys, tmp_path):
    path = tmp_path / "report.jsonl"
    code, out, _ = run(capsys, "verify", "group-axioms", "--trials", "5", "--out", str(path))
    assert code == 0 and out == ""
    assert len(records(path.read_text())) == 3


@pytest.mark.parametrize("argv", [["verify", "nope"], ["verify", "susy", "--k", "a,b"],
                                  ["verify", "susy", "--odd-generators", "1"],
                                  ["decompose", "/does/not/exist.json"], ["frobnicate"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_generate_then_decompose(capsys, tmp_path):
    path = tmp_path / "rep.json"
    assert run(capsys, "generate-rep", "--seed", "4", "--out", str(path))[0] == 0
    truth = json.loads(path.read_text())["truth"]
    code, out, _ = run(capsys, "decompose", str(path))
    assert code == 0
    assert json.loads(out)["summary"] == truth


def test_decompose_pi_minus(capsys, tmp_path):
    path = tmp_path / "pm.json"
    path.write_text(json.dumps([{"m": 0, "p": 1, "q": 1, "Z": [["0", "0"], ["1", "0"]]}]))
    code, out, _ = run(capsys, "decompose", str(path))
    assert code == 0 and json.loads(out)["summary"] == {"pi_minus": 1}


def test_decompose_rejects_bad_block(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"blocks": [{"m": 2, "p": 1, "q": 1, "Z": [[0, 1], [1, 0]]}]}))
    code, _, err = run(capsys, "decompose", str(path))
    assert code == 1
    assert "block 0" in err and "Z^2 = -m I" in err


def test_expand_catalog(capsys):
    code, out, _ = run(capsys, "expand", "catalog:expcos-expsin", "--orders", "2,4,8,16")
    assert code == 0
    head, *csv_lines = out.splitlines()
    doc = json.loads(head)
    assert doc["M"] == 16 and doc["grid_size"] == 64 and len(doc["coefficients"]) == 33
    assert csv_lines[0] == "M,n,sector,sup_error"
    assert len(csv_lines) == 1 + 4 * 3 * 2


def test_expand_to_files(capsys, tmp_path):
    prefix = tmp_path / "run"
    assert run(capsys, "expand", "catalog:2cos", "--max-weight", "3", "--out", str(prefix))[0] == 0
    assert json.loads((tmp_path / "run.json").read_text())["M"] == 3
    assert (tmp_path / "run.csv").read_text().startswith("M,n,sector,sup_error")


def test_expand_failures(capsys, tmp_path):
    assert run(capsys, "expand", "catalog:expcos", "--max-weight", "8", "--grid-size", "8")[0] == 1
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"grid_size": 4, "phi0": [0, 0, 0, 0], "phi1": [0, 0]}))
    assert run(capsys, "expand", str(path))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "supercircle", "verify", "group-axioms", "--k", "-1,0",
                           "--trials", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 3
