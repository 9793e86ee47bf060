import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import CORPUS
from ncreg.cli import run

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "betti_poly2.csv": ["betti", "--algebra", "poly2.alg", "--module", "trivial",
                        "--max-hom", "4", "--max-deg", "8", "--format", "csv"],
    "classify_dual_numbers.json": ["classify", "--algebra", "dual_numbers.alg",
                                   "--max-hom", "6", "--max-deg", "8"],
    "classify_cubic.txt": ["classify", "--algebra", "cubic.alg", "--format", "table"],
    "betti_exterior.txt": ["betti", "--algebra", "exterior.alg", "--max-hom", "6", "--format", "table"],
    "hilbert_cubic.json": ["hilbert", "--algebra", "cubic.alg", "--max-deg", "10"],
    "koszul_cubic.txt": ["koszul", "--algebra", "cubic.alg", "--format", "table"],
    "resolve_poly2.txt": ["resolve", "--algebra", "poly2.alg", "--format", "table"],
    "basis_exterior.csv": ["basis", "--algebra", "exterior.alg", "--format", "csv"],
    "nf_qplane2.json": ["nf", "--algebra", "qplane2.alg", "--poly", "y*x*y + y^2*x"],
    "cm_reg_poly3_free.json": ["cm-reg", "--algebra", "poly3.alg", "--module", "free"],
    "depth_poly3.txt": ["depth", "--algebra", "poly3.alg", "--module", "free", "--format", "table"],
}


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    argv = [str(CORPUS / a) if a.endswith(".alg") else a for a in argv]
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, _ = call(CASES[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_betti_csv_matches_expected_table():
    code, out, _ = call(CASES["betti_poly2.csv"])
    assert out.splitlines() == ["i,0,1,2", "0,1,0,0", "1,0,2,0", "2,0,0,1"]


def test_classify_json_shape():
    code, out, _ = call(CASES["classify_dual_numbers.json"])
    data = json.loads(out)
    assert data["schema"] == 1
    assert (data["verdict"], data["d"], data["l"], data["standard"]) == ("gorenstein", 0, -1, False)
    assert set(data["values"]) == {"cm_reg", "ext_reg", "depth"}
    assert data["certification"] == {"n_max": 6, "D": 8, "exact": False}


def test_repeat_runs_are_identical():
    for argv in CASES.values():
        assert call(argv) == call(argv)


def test_cache_changes_nothing(tmp_path):
    argv = ["classify", "--algebra", "cubic.alg"]
    plain = call(argv)
    cached_cold = call(argv + ["--cache-dir", str(tmp_path)])
    files = list(tmp_path.rglob("*.json"))
    assert files
    cached_warm = call(argv + ["--cache-dir", str(tmp_path)])
    assert plain == cached_cold == cached_warm


def test_cache_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("NCREG_CACHE", str(tmp_path))
    a = call(["betti", "--algebra", "poly3.alg"])
    assert list(tmp_path.rglob("*.json"))
    monkeypatch.delenv("NCREG_CACHE")
    assert call(["betti", "--algebra", "poly3.alg"]) == a


def test_module_file_with_algebra_reference(tmp_path):
    shutil.copy(CORPUS / "poly2.alg", tmp_path / "poly2.alg")
    (tmp_path / "m.mod").write_text("algebra poly2.alg;\ncover 0;\nrel a: x^2;\nrel b: y^2;\n")
    out_s = io.StringIO()
    assert run(["betti", "--module", str(tmp_path / "m.mod"), "--format", "csv"], out_s, io.StringIO()) == 0
    assert out_s.getvalue().splitlines() == ["i,0,1,2,3,4", "0,1,0,0,0,0", "1,0,0,2,0,0", "2,0,0,0,0,1"]


def test_input_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("gens x:1; rels x*y;")
    code, out, err = call(["basis", "--algebra", str(bad)])
    assert code == 2 and "unknown generator y" in err and out == ""
    assert call(["basis", "--algebra", str(tmp_path / "missing.alg")])[0] == 2
    assert call(["basis"])[0] == 2
    assert call(["frobnicate"])[0] == 2
    assert call(["nf", "--algebra", "poly2.alg", "--poly", "x*z"])[0] == 2
    assert call(["basis", "--algebra", "cubic.alg", "--max-deg", "2"])[0] == 2


def test_window_too_small_exits_3():
    code, out, err = call(["basis", "--algebra", "poly2.alg", "--max-deg", "4", "--degree", "6"])
    assert code == 3 and "inconclusive" in err


def test_budget_clamps_the_window(tmp_path):
    alg = tmp_path / "jordanlike.alg"
    alg.write_text("field F 101; gens x:1 y:1; rels y^2 - x*y;")
    code, out, err = call(["hilbert", "--algebra", str(alg), "--budget", "3", "--format", "table"])
    assert code == 0 and "budget exhausted" in err
    full = call(["hilbert", "--algebra", str(alg), "--format", "table"])[1].split()
    part = out.split()
    assert part == full[:len(part)] and len(part) < len(full)


def test_verify_failure_exits_1(tmp_path):
    shutil.copy(CORPUS / "dual_numbers.alg", tmp_path)
    data = json.loads((CORPUS / "corpus.json").read_text())
    entry = next(a for a in data["algebras"] if a["name"] == "dual_numbers")
    entry["expected"]["cm_reg_A"] = "7"
    data["algebras"] = [entry]
    data["samples"]["random_modules"] = 2
    (tmp_path / "corpus.json").write_text(json.dumps(data))
    code, out, err = call(["verify", "--suite", "corpus", "--corpus", str(tmp_path)])
    assert code == 1
    assert "FAIL corpus dual_numbers" in err
    report = json.loads(out)
    assert report["totals"]["fail"] == 1


def test_verify_subprocess_is_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "ncreg", "verify", "--suite", "corpus", "main", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["seed"] == 7
