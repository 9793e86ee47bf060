import json
from functools import lru_cache

import pytest

from conftest import corpus_gb
from ncreg import harness
from ncreg.harness import (
    AlgebraContext,
    ModuleEval,
    load_corpus,
    random_quadratic_algebras,
    report_exit_code,
    run_suites,
    sample_modules,
    verify_auslander_buchsbaum,
    verify_jorgensen,
    verify_main_theorem,
    verify_romer_formula,
    verify_standard_implies_regular,
)
from ncreg.parser import parse_module
from ncreg.resolution import free_module, module_from_text


@lru_cache(maxsize=None)
def ctx(name, modules=3):
    return AlgebraContext(name, corpus_gb(name, 8), 6, 8, seed=42, random_modules=modules)


def by_module(records):
    return {r["module"]: r for r in records}


def test_corpus_loads_six_algebras():
    c = load_corpus()
    assert [e.name for e in c.entries] == ["poly2", "poly3", "qplane2", "exterior", "dual_numbers", "cubic"]
    assert c.random_modules == 20
    assert load_corpus(harness.default_corpus_dir() / "corpus.json").entries[0].name == "poly2"


def test_jorgensen_examples():
    c = ctx("poly2")
    r = by_module(verify_jorgensen(c, [c.k]))["k"]
    assert r["verdict"] == "pass" and r["values"]["difference"] == "0"
    c = ctx("cubic")
    r = by_module(verify_jorgensen(c, [c.k]))["k"]
    assert r["verdict"] == "pass"
    assert r["values"]["cm_reg_A"] == "-1" and r["values"]["ext_reg"] == "1"
    c = ctx("dual_numbers")
    r = by_module(verify_jorgensen(c, [c.A]))["A"]
    assert r["verdict"] == "pass"
    assert (r["values"]["cm_reg"], r["values"]["ext_reg"]) == ("1", "0")


def test_main_theorem_equality_over_polynomial_ring():
    c = ctx("poly2", 20)
    recs = verify_main_theorem(c, c.samples())
    assert len(recs) >= 22
    assert all(r["verdict"] == "pass" for r in recs)


@pytest.mark.parametrize("name,module,cm,er", [
    ("cubic", "k", "0", "1"),
    ("exterior", "A", "2", "0"),
    ("dual_numbers", "A", "1", "0"),
])
def test_main_theorem_witnesses(name, module, cm, er):
    c = ctx(name)
    (r,) = verify_main_theorem(c, c.samples())
    assert r["verdict"] == "pass" and r["module"] == module
    assert (r["values"]["cm_reg"], r["values"]["ext_reg"]) == (cm, er)


def test_standard_implies_regular_examples():
    (r,) = verify_standard_implies_regular(ctx("poly2"))
    assert r["verdict"] == "pass" and r["detail"] == "pd k = d"
    for name in ("dual_numbers", "exterior"):
        (r,) = verify_standard_implies_regular(ctx(name))
        assert r["verdict"] == "pass" and "not standard" in r["detail"]
    (r,) = verify_standard_implies_regular(ctx("cubic"))
    assert "hypothesis fails" in r["detail"]


def test_romer_examples():
    c = ctx("poly2")
    shifted = ModuleEval(c, "A(-3)", free_module(c.gb, (3,)))
    recs = by_module(verify_romer_formula(c, [shifted, c.k]))
    assert recs["A(-3)"]["verdict"] == "pass"
    assert recs["A(-3)"]["values"]["cm_reg"] == "3" and recs["A(-3)"]["values"]["ext_reg"] == "3"
    assert recs["k"]["verdict"] == "pass"
    c = ctx("cubic")
    r = by_module(verify_romer_formula(c, [c.A]))["A"]
    assert r["verdict"] == "pass" and r["values"]["cm_reg"] == "-1"


def test_auslander_buchsbaum_examples():
    c = ctx("poly2")
    gb = c.gb
    Ax = ModuleEval(c, "A/(x)", module_from_text(gb, parse_module("cover 0; rel a: x;", gb.presentation)))
    recs = by_module(verify_auslander_buchsbaum(c, [c.k, c.A, Ax]))
    assert recs["k"]["values"] == {"pd": "2", "depth": "0", "depth_A": "2"}
    assert recs["A"]["values"] == {"pd": "0", "depth": "2", "depth_A": "2"}
    assert recs["A/(x)"]["values"] == {"pd": "1", "depth": "1", "depth_A": "2"}
    assert all(r["verdict"] == "pass" for r in recs.values())


def test_sample_modules_are_seeded():
    gb = corpus_gb("poly3", 8)
    a = [M.to_json() for _, M, _ in sample_modules(gb, "poly3", 42, 6)]
    b = [M.to_json() for _, M, _ in sample_modules(gb, "poly3", 42, 6)]
    c = [M.to_json() for _, M, _ in sample_modules(gb, "poly3", 43, 6)]
    assert a == b and a != c


def test_random_quadratic_algebras_are_seeded():
    assert random_quadratic_algebras(7) == random_quadratic_algebras(7)
    assert random_quadratic_algebras(7) != random_quadratic_algebras(8)
    assert len(random_quadratic_algebras(7, 5)) == 5


def test_exit_codes():
    rep = lambda p, f, i: {"totals": {"pass": p, "fail": f, "inconclusive": i}}  # noqa: E731
    assert report_exit_code(rep(3, 0, 2)) == 0
    assert report_exit_code(rep(3, 1, 0)) == 1
    assert report_exit_code(rep(0, 0, 2)) == 3


def test_unknown_suite_rejected():
    with pytest.raises(Exception, match="unknown suite"):
        run_suites(["nope"], load_corpus())


def test_report_is_json_and_deterministic(tmp_path):
    corpus = load_corpus()
    corpus.entries = [e for e in corpus.entries if e.name in ("dual_numbers", "exterior")]
    a = run_suites(["corpus", "main"], corpus, seed=5, quadratic=0)
    b = run_suites(["corpus", "main"], corpus, seed=5, quadratic=0)
    assert json.dumps(a) == json.dumps(b)
    assert a["schema"] == 1 and a["totals"]["fail"] == 0
