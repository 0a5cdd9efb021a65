import io
import json
import subprocess
import sys

import pytest

from thomcob.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_verdict_so5():
    code, out, _ = run("verdict", "SO(5)", "3")
    assert code == 0
    assert "NOT_IN_IMAGE" in out
    assert "[Sq1,Sq2](u1^3 + u3) = u1^6" in out


def test_verdict_json():
    code, out, _ = run("--format", "json", "verdict", "SO(5)", "3")
    rec = json.loads(out)
    assert rec["schema"] == "thomcob/1"
    w = rec["verdicts"][0]["witnesses"][0]
    assert (w["word"], w["value"]) == ("Sq1,Sq2", "u1^6")


def test_cells_homology():
    code, out, _ = run("cells", "5", "--homology")
    assert code == 0
    rows = dict(line.split(None, 1) for line in out.splitlines()[1:])
    assert rows["7"] == "Z" and rows["0"] == "Z" and rows["1"] == "Z/2"


def test_cells_diagram_and_listing():
    code, out, _ = run("cells", "5", "--diagram")
    assert code == 0 and out.startswith("graph") and out.count(" -- ") == 20
    code, out, _ = run("cells", "3")
    assert "cells of SO(3): 4" in out


def test_table1_default():
    code, out, _ = run("table1")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 34
    assert lines[2].split() == ["SO(5)", "no", "3"]


def test_table1_subset_json():
    code, out, _ = run("--format", "json", "table1", "SO(4)", "Ss(12)")
    rows = json.loads(out)["rows"]
    assert [(r["group"], r["surjective"], r["min_degree"]) for r in rows] == [
        ("SO(4)", "yes", None), ("Ss(12)", "no", 7)]


def test_apply_and_basis():
    assert run("apply", "E7", "3", "Q1", "x3")[1].strip() == "[Q1](x3) = 2*x8"
    code, out, _ = run("basis", "SO(5)", "2", "3")
    assert out.split() == ["SO(5)", "mod", "2,", "degree", "3:", "2", "u1^3", "u3"]


def test_integral_and_bockstein():
    code, out, _ = run("integral", "PSO(6)", "2")
    assert code == 0 and "  7  Z + Z/2^>=2 + Z/2" in out
    code, out, _ = run("bockstein", "SO(5)", "2")
    assert "u1^3 + u3" in out
    code, out, _ = run("--format", "dot", "bockstein", "SO(5)", "2")
    assert out.startswith("digraph")


def test_bound_scan_catalog():
    assert "multiplier bound 1" in run("bound", "Sp(2)", "3")[1]
    code, out, _ = run("scan", "Ss(12)")
    assert out.startswith("Ss(12): no, min degree 7")
    code, out, _ = run("--format", "json", "catalog", "E8")
    assert json.loads(out)["dim"] == 248


@pytest.mark.parametrize("argv", [
    ["scan", "XY(3)"],
    ["apply", "SO(5)", "2", "Sq1", "u9"],
    ["apply", "SO(5)", "2", "Sqq", "u1"],
    ["basis", "SO(5)", "3", "1"],
    ["verdict", "SO(5)", "2"],
    ["--format", "dot", "scan", "SO(5)"],
    ["--max-length", "0", "scan", "SO(5)"],
    ["nonsense"],
])
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == 2


def test_strict_taint_exit():
    # Spin(7) has operations on its extra class that are not listed
    code, out, err = run("--strict", "apply", "Spin(7)", "2", "Sq2", "z")
    assert code == 3 and "tainted" in out
    code, _, _ = run("--strict", "verdict", "SO(5)", "3")
    assert code == 0


def test_env_format(monkeypatch):
    monkeypatch.setenv("THOMCOB_FORMAT", "json")
    code, out, _ = run("bound", "SO(5)", "3")
    assert json.loads(out)["bound"] % 2 == 0


def test_deterministic():
    a = run("--format", "json", "table1", "SO(8)", "PSO(12)", "E7ad")[1]
    b = run("--format", "json", "table1", "SO(8)", "PSO(12)", "E7ad")[1]
    assert a == b


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "thomcob", "cells", "5", "--homology"],
                       capture_output=True, text=True, check=True)
    assert "  7  Z" in r.stdout
