import csv
import io
import json
import subprocess
import sys

import pytest

from hyg.cli import main, parse_grid
from hyg.io import hypergroup_to_dict, save_hypergroup


@pytest.fixture
def files(tmp_path, registry):
    paths = {}
    for name in ("trivial", "J(1/3)", "S3-classes", "Z2"):
        p = tmp_path / f"{name.replace('/', '_')}.json"
        save_hypergroup(registry[name], p)
        paths[name] = str(p)
    return paths


def write_json(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text, expected", [
    ("1.1:1.9:0.1", (1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9)),
    ("1:2:0.25", (1.0, 1.25, 1.5, 1.75, 2.0)),
    ("1.5:1.5:0.1", (1.5,)),
    ("1.9:1.1:0.1", ()),
    ("4/3:4/3:1", (4 / 3,)),
])
def test_parse_grid(text, expected):
    assert parse_grid(text) == pytest.approx(expected)


def test_validate_ok(capsys, files):
    code, out, _ = run(capsys, "validate", files["J(1/3)"])
    assert code == 0
    assert out.startswith("valid")


def test_validate_missing_pair(capsys, tmp_path, registry):
    doc = hypergroup_to_dict(registry["S3-classes"])
    doc["convolution"] = [c for c in doc["convolution"] if (c["x"], c["y"]) != ("C1", "C2")]
    code, _, err = run(capsys, "validate", write_json(tmp_path, "bad.json", doc))
    assert code == 2
    assert "(C1, C2)" in err


def test_validate_a6_violation(capsys, tmp_path):
    doc = {"elements": ["e", "a"], "identity": "e", "involution": {"e": "e", "a": "a"},
           "convolution": [{"x": "a", "y": "a", "terms": [{"z": "a", "c": "1"}]}]}
    code, out, err = run(capsys, "validate", write_json(tmp_path, "a6.json", doc))
    assert code == 1
    assert "axiom A6" in err and "('a', 'a')" in err
    assert "A6             FAIL" in out


def test_validate_unreadable(capsys, tmp_path):
    assert run(capsys, "validate", str(tmp_path / "nope.json"))[0] == 2
    p = tmp_path / "junk.json"
    p.write_text("{")
    assert run(capsys, "validate", str(p))[0] == 2


def test_dual_csv(capsys, files):
    code, out, _ = run(capsys, "dual", files["J(1/3)"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["plancherel"]) for r in rows] == pytest.approx([0.25, 0.75])
    code, out, _ = run(capsys, "dual", files["S3-classes"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert sorted(float(r["plancherel"]) for r in rows) == pytest.approx([1 / 6, 1 / 6, 2 / 3])
    code, out, _ = run(capsys, "dual", files["trivial"])
    assert len(out.strip().splitlines()) == 2


def test_dual_json_to_file(capsys, files, tmp_path):
    target = tmp_path / "dual.json"
    code, out, _ = run(capsys, "dual", files["Z2"], "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert len(doc["characters"]) == 2


def test_dual_invalid_hypergroup(capsys, tmp_path):
    doc = {"elements": ["e", "a"], "identity": "e", "involution": {"e": "e", "a": "a"},
           "convolution": [{"x": "a", "y": "a", "terms": [{"z": "a", "c": "1"}]}]}
    assert run(capsys, "dual", write_json(tmp_path, "bad.json", doc))[0] == 1


def test_hy_extremal(capsys, files, tmp_path):
    f = write_json(tmp_path, "f.json", [1, 1])
    code, out, _ = run(capsys, "hy", files["J(1/3)"], f, "--p", "1.5")
    assert code == 0
    doc = json.loads(out)
    assert doc["ratio"] == pytest.approx(1.0, abs=1e-12)
    assert doc["certificate"]["verdict"] == "Extremal"


def test_hy_strict(capsys, files, tmp_path):
    f = write_json(tmp_path, "f.json", [0, {"re": 1, "im": 0}])
    code, out, _ = run(capsys, "hy", files["J(1/3)"], f, "--p", "4/3")
    doc = json.loads(out)
    assert doc["ratio"] == pytest.approx(21 ** 0.25 / 3 ** 0.75, abs=1e-12)
    assert doc["certificate"]["verdict"] == "NotExtremal"


def test_hy_p_two_suppresses_certificate(capsys, files, tmp_path):
    f = write_json(tmp_path, "f.json", [0.3, -2])
    code, out, _ = run(capsys, "hy", files["J(1/3)"], f, "--p", "2")
    doc = json.loads(out)
    assert code == 0 and doc["certificate"] is None and "suppressed" in doc["note"]
    assert doc["ratio"] == pytest.approx(1.0)


@pytest.mark.parametrize("values, p, code", [
    ([0, 0], "1.5", 1),
    ([1, 2, 3], "1.5", 2),
    ([1, 2], "2.5", 2),
    ([1, 2], "abc", 2),
])
def test_hy_errors(capsys, files, tmp_path, values, p, code):
    f = write_json(tmp_path, "f.json", values)
    assert run(capsys, "hy", files["J(1/3)"], f, "--p", p)[0] == code


def test_search_deterministic_output(capsys, files, tmp_path):
    out_path = tmp_path / "argmax.json"
    args = ("search", files["S3-classes"], "--p", "1.5", "--restarts", "8", "--seed", "11")
    code1, out1, _ = run(capsys, *args, "--out", str(out_path))
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["ratio"] >= 1 - 1e-6
    assert doc["certificate"]["verdict"] == "Extremal"
    assert doc["stats"]["restarts"] == 8
    assert len(json.loads(out_path.read_text())) == 3


@pytest.mark.parametrize("p", ["1.01", "1.99"])
def test_search_grid_robustness(capsys, files, p):
    code, out, _ = run(capsys, "search", files["J(1/3)"], "--p", p, "--restarts", "8")
    assert code == 0
    assert json.loads(out)["ratio"] >= 1 - 1e-6


def test_search_rejects_p_one(capsys, files):
    assert run(capsys, "search", files["Z2"], "--p", "1")[0] == 2


def test_report_csv(capsys, files):
    code, out, _ = run(capsys, "report", files["J(1/3)"], "--p-grid", "1.1:1.9:0.1", "--restarts", "8")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["p", "structured_ratio", "search_ratio", "verdict"]
    assert len(rows) == 9
    assert all(abs(float(r["search_ratio"]) - 1) <= 1e-6 for r in rows)
    assert {r["verdict"] for r in rows} == {"Extremal"}


def test_report_empty_grid(capsys, files):
    assert run(capsys, "report", files["J(1/3)"], "--p-grid", "1.9:1.1:0.1")[0] == 1


def test_examples_listing_and_export(capsys, tmp_path):
    code, out, _ = run(capsys, "examples")
    assert code == 0 and len(out.splitlines()) == 12
    code, out, _ = run(capsys, "examples", "--out", str(tmp_path / "reg"))
    files = sorted((tmp_path / "reg").glob("*.json"))
    assert len(files) == 12
    for path in files:
        assert main(["validate", str(path)]) == 0


def test_bad_command_is_parse_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "search")[0] == 2


def test_size_cap_env(capsys, files, monkeypatch):
    monkeypatch.setenv("HYG_SIZE_CAP", "1")
    code, _, err = run(capsys, "report", files["S3-classes"], "--p-grid", "1.5:1.5:1")
    assert code == 1
    assert "HYG_SIZE_CAP" in err


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "hyg.cli", "validate", files["Z2"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("valid")
