import json
import shutil
import subprocess
import sys

import pytest

import clarr.report
import clarr.verifiers
from clarr.cli import main
from clarr.scene import bundled_path


def scene_file(tmp_path, doc, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def tri_doc(**extra):
    doc = {
        "schema_version": 1,
        "name": "tri",
        "components": [
            {"id": "x", "type": "line", "coeffs": [1, 0, 0]},
            {"id": "y", "type": "line", "coeffs": [0, 1, 0]},
            {"id": "z", "type": "line", "coeffs": [0, 0, 1]},
        ],
    }
    doc.update(extra)
    return doc


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_json(tmp_path, capsys):
    code, out, _ = run(["analyze", scene_file(tmp_path, tri_doc())], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["summary"]["tau"] == {"global": 3, "local": 3}
    assert rep["summary"]["free"] == {"is_free": True, "exponents": [1, 1]}
    assert len(rep["singularities"]) == 3


def test_analyze_text(tmp_path, capsys):
    code, out, _ = run(["analyze", scene_file(tmp_path, tri_doc()), "--format", "text"], capsys)
    assert code == 0
    assert "free with exponents [1, 1]" in out


def test_analyze_deterministic(capsys):
    path = str(bundled_path("near_pencil_4"))
    _, a, _ = run(["analyze", path], capsys)
    _, b, _ = run(["analyze", path], capsys)
    assert a == b


def test_timing_opt_in(tmp_path, capsys):
    _, out, _ = run(["analyze", scene_file(tmp_path, tri_doc()), "--timing"], capsys)
    assert "timing" in json.loads(out)


def test_verify_inline_target(tmp_path, capsys):
    path = scene_file(tmp_path, tri_doc())
    target = json.dumps({"id": "L", "type": "line", "coeffs": [1, 1, 0]})
    code, out, _ = run(["verify", path, "--theorem", "A", "--target", target], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] and rep["results"][0]["result"]["classification"] == "ForcedFree"


def test_verify_component_target(tmp_path, capsys):
    code, out, _ = run(["verify", scene_file(tmp_path, tri_doc()), "--theorem", "A", "--target", "x"], capsys)
    assert code == 0 and json.loads(out)["results"][0]["result"]["case"] == "A.1.b"


def test_examples_list(capsys):
    code, out, _ = run(["examples", "list"], capsys)
    assert code == 0
    assert {"triangle", "chern_factor", "notfree_pencil", "free_6_7"} <= set(out.split())


def test_examples_run_one(capsys):
    code, out, _ = run(["examples", "run", "triangle"], capsys)
    assert code == 0 and out.strip() == "triangle: pass"


@pytest.mark.parametrize("doc", [
    {"schema_version": 2, "name": "bad", "components": []},
    {"schema_version": 1, "name": "bad", "components": [{"id": "x", "type": "line", "coeffs": [0, 0, 0]}]},
    {"schema_version": 1, "name": "bad", "components": [{"id": "q", "type": "conic", "coeffs": [1, 0, 0, 0, 0, 0]}]},
])
def test_exit_input(tmp_path, capsys, doc):
    code, _, err = run(["analyze", scene_file(tmp_path, doc)], capsys)
    assert code == 2 and err.startswith("error:")


def test_exit_input_duplicate_component(tmp_path, capsys):
    doc = tri_doc()
    doc["components"].append({"id": "w", "type": "line", "coeffs": [2, 0, 0]})
    code, _, _ = run(["analyze", scene_file(tmp_path, doc)], capsys)
    assert code == 2


def test_exit_input_unknown_target_and_missing_file(tmp_path, capsys):
    path = scene_file(tmp_path, tri_doc())
    assert run(["verify", path, "--theorem", "A", "--target", "nope"], capsys)[0] == 2
    assert run(["analyze", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["verify", path, "--theorem", "free-case"], capsys)[0] == 0


def test_exit_unrepresentable(tmp_path, capsys):
    # (1:0:0) and the four points (+-i : +-sqrt2 : 1) need two different extensions
    path = str(bundled_path("notfree_pencil"))
    target = json.dumps({"id": "K", "type": "conic", "coeffs": [1, 0, 0, 1, 0, -1]})
    code, _, err = run(["verify", path, "--theorem", "B2", "--target", target], capsys)
    assert code == 3 and "extension" in err


def test_exit_internal(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(clarr.report, "global_tjurina", lambda f: 999)
    code, _, err = run(["analyze", scene_file(tmp_path, tri_doc())], capsys)
    assert code == 4 and err.startswith("internal error")


def test_exit_verify(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(clarr.verifiers, "classify_line_deletion", lambda x, a, b: ("A.1.a", "DichotomyViolated"))
    code, out, _ = run(["verify", scene_file(tmp_path, tri_doc()), "--theorem", "A"], capsys)
    assert code == 5 and json.loads(out)["ok"] is False


def test_exit_manifest(capsys, monkeypatch):
    monkeypatch.setattr("clarr.cli.load_manifest", lambda name: {"expect": {"summary.tau.global": 4}})
    code, out, _ = run(["examples", "run", "triangle"], capsys)
    assert code == 6 and "FAIL" in out


@pytest.mark.skipif(shutil.which("clarr") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["clarr", "examples", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and "triangle" in r.stdout


def test_module_entry():
    r = subprocess.run([sys.executable, "-m", "clarr.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and "clarr" in r.stdout
