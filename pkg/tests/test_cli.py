import json
import shutil
import subprocess
import sys

import pytest

from superbicross.cli import main
from superbicross.dsl import parse_presentation
from superbicross.dsl.bundled import bundled_path
from superbicross.dsl.mutations import mutation_text


def test_check_pass_writes_report(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    assert main(["check", "classical_poincare", "--report", str(out)]) == 0
    lines = out.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["id"] == "_header" and header["detail"]["name"] == "classical_poincare"
    records = [json.loads(x) for x in lines[1:]]
    assert all(list(r) == ["id", "anchor", "status", "detail", "seed"] for r in records)
    assert all(r["status"] != "fail" for r in records)
    assert "PASS" in capsys.readouterr().out


def test_check_deterministic(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    path = str(bundled_path("kappa_superspace"))
    assert main(["check", path, "--report", str(a), "--seed", "7"]) == 0
    assert main(["check", path, "--report", str(b), "--seed", "7"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_check_failure_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.hsa"
    f.write_text(mutation_text("superspace_antipode_sign"))
    assert main(["check", str(f)]) == 1
    records = [json.loads(x) for x in capsys.readouterr().out.splitlines()[1:]]
    failed = {r["id"] for r in records if r["status"] == "fail"}
    assert any(i.startswith("hopf.antipode_left") for i in failed)


def test_usage_and_parse_errors(tmp_path, capsys):
    assert main([]) == 2
    assert main(["check", str(tmp_path / "missing.hsa")]) == 2
    f = tmp_path / "broken.hsa"
    f.write_text("gen a : even\n")
    capsys.readouterr()
    assert main(["check", str(f)]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["kind"] == "syntax" and err["error"]["line"] == 2
    assert main(["nf", "kappa_superspace", "--expr", "z1*"]) == 2
    assert main(["nf", "classical_poincare", "--expr", "P0"]) == 2  # two algebras, none chosen


def test_nf(capsys):
    assert main(["nf", "kappa_superspace", "--expr", "z1*z0"]) == 0
    assert capsys.readouterr().out.strip() == "i*k^-1*z1 + z0*z1"
    assert main(["nf", "classical_poincare", "--algebra", "H2", "--expr", "P1*P0"]) == 0
    assert capsys.readouterr().out.strip() == "P0*P1"


def test_build_emits_parsable_presentation(tmp_path, capsys):
    out = tmp_path / "built.hsa"
    assert main(["build", "classical_poincare", "--emit", str(out)]) == 0
    doc = parse_presentation(out.read_text())
    assert doc.name == "classical_poincare_built"
    assert main(["nf", str(out), "--expr", "P0*M01"]) == 0
    assert capsys.readouterr().out.strip().endswith("-i*P1 + M01*P0")


@pytest.mark.skipif(shutil.which("superbicross") is None, reason="console script not installed")
def test_console_script(tmp_path):
    r = subprocess.run(["superbicross", "nf", "kappa_superspace", "--expr", "th2*th1"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "-th1*th2"
    r = subprocess.run([sys.executable, "-m", "superbicross.cli", "check"], capture_output=True, text=True)
    assert r.returncode == 2
