import csv
import json

import pytest

from einstein_su.cli import dumps, main


def run(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = main([*argv, "--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_solve_group_su5(tmp_path):
    code, rep = run(tmp_path, "solve", "--space", "group", "--l", "1", "--m", "2", "--n", "2", "--json")
    assert code == 0
    assert {"space", "l", "m", "n", "solutions", "rejected"} <= set(rep)
    non_nr = [s for s in rep["solutions"] if not s["classification"]["naturally_reductive"]]
    assert len(non_nr) == 2 and all(s["residual"] < 1e-9 for s in rep["solutions"])


def test_solve_stiefel_counts(tmp_path):
    code, rep = run(tmp_path, "solve", "--space", "stiefel", "--l", "2", "--m", "2", "--n", "2")
    assert code == 0 and len(rep["solutions"]) == 8
    code, rep = run(tmp_path, "solve", "--space", "group", "--l", "1", "--m", "1", "--n", "1")
    assert code == 0 and len(rep["solutions"]) == 1


def test_output_is_bit_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["solve", "--l", "1", "--m", "1", "--n", "2", "--pipeline", "newton", "--starts", "64", "--seed", "3"]
    assert main([*args, "--out", str(a)]) == 0 and main([*args, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_roundtrip_and_tamper(tmp_path):
    sol = tmp_path / "sol.json"
    assert main(["solve", "--space", "stiefel", "--l", "1", "--m", "1", "--n", "2", "--out", str(sol)]) == 0
    code, rep = run(tmp_path, "verify", str(sol))
    assert code == 0 and rep["pass"] and len(rep["checks"]) == 2
    data = json.loads(sol.read_text())
    data["solutions"][0]["params"]["x6"] += 1e-3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, rep = run(tmp_path, "verify", str(bad))
    assert code == 3 and not rep["checks"][0]["pass"] and rep["checks"][0]["observed"] > 1e-6


def test_verify_empty_and_malformed(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"space": "group", "l": 1, "m": 1, "n": 1, "solutions": []}))
    code, rep = run(tmp_path, "verify", str(empty))
    assert code == 0 and rep["checks"] == [] and rep["pass"]
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["verify", str(broken)]) == 2


def test_classify_command(tmp_path):
    sol = tmp_path / "sol.json"
    main(["solve", "--space", "group", "--l", "1", "--m", "1", "--n", "2", "--out", str(sol)])
    code, rep = run(tmp_path, "classify", "--solution", str(sol))
    assert code == 0 and all(c["naturally_reductive"] for c in rep["classifications"])


def test_usage_errors():
    assert main(["solve", "--l", "0", "--m", "1", "--n", "1"]) == 2
    assert main(["solve", "--l", "1", "--m", "1"]) == 2
    assert main(["solve", "--l", "1", "--m", "1", "--n", "1", "--pipeline", "magic"]) == 2
    assert main(["ricci", "--l", "1", "--m", "1", "--n", "1", "--gauge", "1,2,2,4"]) == 2
    assert main(["ricci", "--l", "1", "--m", "1", "--n", "1", "--metric", "x6=-1"]) == 2


def test_constants_and_ricci(tmp_path):
    code, rep = run(tmp_path, "constants", "--l", "1", "--m", "2", "--n", "2", "--gauge", "1,0,0.5,1")
    assert code == 0 and rep["B"]["entries"] and rep["Q"]["gauge"] == [1.0, 0.0, 0.5, 1.0]
    code, rep = run(tmp_path, "ricci", "--l", "1", "--m", "2", "--n", "2")
    assert code == 0 and rep["einstein"] and abs(rep["mean_component"] - 0.25) < 1e-12


def test_csv(tmp_path):
    path = tmp_path / "s.csv"
    assert main(["solve", "--l", "1", "--m", "1", "--n", "2", "--csv", str(path), "--out", str(tmp_path / "o.json")]) == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 2 and {"x6", "lambda", "nr_case"} <= set(rows[0])


def test_float_format():
    assert dumps({"x": 0.1}) == '{\n  "x": 0.10000000000000001\n}'
    assert json.loads(dumps({"x": [1 / 3, float("nan")]})) == {"x": [0.33333333333333331, None]}
