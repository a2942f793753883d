"""The ``weil`` command line: exit codes, formats, error handling."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from weil.cli import main

MANIFESTS = Path(__file__).resolve().parent.parent / "manifests"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_algebra_info(capsys):
    code, out, _ = run(capsys, "algebra", "info", "jet(2)")
    assert code == 0
    assert "u^2" in out and "signature (2, 1, 0)" in out


def test_algebra_info_json(capsys):
    code, out, _ = run(capsys, "algebra", "info", "truncated(2,1)", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == 3 and doc["axioms"]["status"] == "pass"


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "-m", str(MANIFESTS / "contact_r3.yaml"))
    assert code == 0 and "[PASS] contact" in out


def test_lift_json_is_deterministic(capsys):
    args = ("--seed", "3", "lift", "-m", str(MANIFESTS / "cosymplectic_r3.yaml"), "--format", "json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    doc = json.loads(a)
    assert doc["status"] == "pass" and doc["input"]["verification"]["seed"] == 3
    assert "time" not in a


def test_lift_latex(capsys):
    code, out, _ = run(capsys, "lift", "-m", str(MANIFESTS / "kahler_r2.json"), "--format", "latex")
    assert code == 0
    assert out.startswith("\\begin{aligned}") and "\\omega &=" in out


def test_lift_to_file(capsys, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "lift", "-m", str(MANIFESTS / "heisenberg.yaml"), "--format", "json", "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["command"] == "lift"


def test_compare_lifts(capsys):
    code, out, _ = run(capsys, "compare-lifts", "-m", str(MANIFESTS / "compare_lifts.yaml"))
    assert code == 0
    assert "canonical-bracket-homomorphism" in out and "difference:" in out


def test_compare_lifts_needs_field(capsys):
    code, out, err = run(capsys, "compare-lifts", "-m", str(MANIFESTS / "contact_r3.yaml"))
    assert code == 2 and out == "" and "vector_field" in err


def test_failing_structure_exits_1(capsys, tmp_path):
    p = tmp_path / "m.yaml"
    p.write_text('schema_version: "1"\npatch: {coords: [x, y, z]}\n'
                 'structure: {kind: contact, components: {beta: {type: form, degree: 1, '
                 'terms: [{index: [z], expr: "1"}]}}}\n')
    code, out, _ = run(capsys, "verify", "-m", str(p))
    assert code == 1 and "[FAIL]" in out


@pytest.mark.parametrize("body, needle", [
    ('schema_version: "1"\npatch: {coords: [x, y]}\nstructure: {kind: contact, components: '
     '{beta: {type: form, degree: 1, terms: []}}}\n', "odd"),
    ('schema_version: "1"\npatch: {coords: [x, y]}\nstructure: {kind: symplectic, components: '
     '{omega: {type: form, degree: 2, terms: [{index: [x, y], expr: "1 + * x"}]}}}\n', "position 4"),
    ('schema_version: "1"\npatch: {coords: [x, y]}\nstructure: {kind: symplectic, nope: 1, components: {}}\n',
     "schema error"),
    ("{not yaml: [", "input error"),
])
def test_input_errors_exit_2(capsys, tmp_path, body, needle):
    p = tmp_path / "m.yaml"
    p.write_text(body)
    code, out, err = run(capsys, "verify", "-m", str(p))
    assert code == 2
    assert out == ""  # no partial report
    assert needle in err


def test_missing_file(capsys):
    code, out, err = run(capsys, "verify", "-m", "/nonexistent/m.yaml")
    assert code == 2 and out == ""


def test_bad_arguments_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["demo", "no-such-demo"])
    assert info.value.code == 2


def test_demo_json(capsys):
    code, out, _ = run(capsys, "demo", "suspension", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["demo"] == "suspension" and doc["status"] == "pass"


def test_console_script_installed():
    r = subprocess.run([sys.executable, "-m", "weil.cli", "algebra", "info", "dual"], capture_output=True, text=True)
    assert r.returncode == 0 and "dimension l = 2" in r.stdout
