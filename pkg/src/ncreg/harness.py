"""Verification suites over a corpus of algebras and sampled modules.

Every check compares interval-valued invariants.  A record fails only when
the intervals prove the stated relation false; when they neither prove nor
refute it the record is inconclusive and carries a hint.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional

from .core import NcregError
from .groebner import GroebnerBasis, groebner_truncated
from .parser import parse_presentation
from .regularity import (
    NEG_INF,
    POS_INF,
    GorensteinClassification,
    RegularityValue,
    UnsupportedContext,
    classify,
    cm_regularity,
    compute_depth,
    ext_regularity,
    target_pieces,
)
from .resolution import (
    ModulePresentation,
    MinimalResolution,
    betti_table,
    free_module,
    minimal_resolution,
    projective_dimension,
    random_module,
    trivial_module,
)

SUITES = ("regularity-bounds", "main", "standard-regular", "finite-pd",
          "auslander-buchsbaum", "euler", "corpus")

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


# --- interval helpers ---------------------------------------------------------


def _add(x, y, side):
    try:
        return x + y
    except ValueError:
        return NEG_INF if side < 0 else POS_INF


def _iv(v: RegularityValue):
    return (v.lo, v.hi)


def iv_sub(a, b):
    return (_add(a[0], -b[1], -1), _add(a[1], -b[0], 1))


def iv_le(a, b):
    if a[1] <= b[0]:
        return True
    if a[0] > b[1]:
        return False
    return None


def iv_eq(a, b):
    if a[0] == a[1] == b[0] == b[1]:
        return True
    if a[1] < b[0] or b[1] < a[0]:
        return False
    return None


def _fmt_iv(a):
    if a[0] == a[1]:
        return str(a[0])
    if a[1] == POS_INF:
        return f">={a[0]}"
    if a[0] == NEG_INF:
        return f"<={a[1]}"
    return f"[{a[0]},{a[1]}]"


def _combine(*truths):
    if any(t is False for t in truths):
        return FAIL
    if all(t is True for t in truths):
        return PASS
    return INCONCLUSIVE


# --- corpus -------------------------------------------------------------------


@dataclass
class CorpusEntry:
    name: str
    path: Path
    n_max: int
    D: int
    expected: dict = dc_field(default_factory=dict)
    provenance: dict = dc_field(default_factory=dict)


@dataclass
class Corpus:
    entries: List[CorpusEntry]
    random_modules: int = 20


def default_corpus_dir() -> Path:
    return Path(str(resources.files("ncreg") / "corpus"))


def load_corpus(path=None) -> Corpus:
    base = Path(path) if path is not None else default_corpus_dir()
    index = base / "corpus.json" if base.is_dir() else base
    try:
        doc = json.loads(index.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise NcregError(f"cannot read corpus index {index}: {e}") from None
    entries = []
    for e in doc["algebras"]:
        w = e.get("window", {})
        entries.append(CorpusEntry(e["name"], index.parent / e["file"], w.get("n_max", 6),
                                   w.get("D", 10), e.get("expected", {}), e.get("provenance", {})))
    return Corpus(entries, doc.get("samples", {}).get("random_modules", 20))


# --- per-algebra evaluation context --------------------------------------------


class ModuleEval:
    """Lazily computed invariants of one module, shared between suites."""

    def __init__(self, ctx: "AlgebraContext", label: str, M: ModulePresentation, seed=None):
        self.ctx = ctx
        self.label = label
        self.M = M
        self.seed = seed
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def resolution(self) -> MinimalResolution:
        c = self.ctx
        gldim = c.C.d if c.C.verdict == "regular" else None
        n = max(c.n_max, (c.C.d or 0) + 1)
        return self._get("res", lambda: minimal_resolution(self.M, n, c.D, gldim=gldim))

    @property
    def betti(self):
        return self._get("betti", lambda: betti_table(self.resolution))

    @property
    def ext_reg(self) -> RegularityValue:
        return self._get("ext_reg", lambda: ext_regularity(self.betti))

    @property
    def cm_reg(self) -> Optional[RegularityValue]:
        def go():
            try:
                return cm_regularity(self.M, self.ctx.C, self.ctx.n_max, self.ctx.D, self.resolution)
            except UnsupportedContext:
                return None
        return self._get("cm_reg", go)

    @property
    def depth(self) -> RegularityValue:
        return self._get("depth", lambda: compute_depth(self.M, self.ctx.Rk))

    @property
    def pd(self):
        return self._get("pd", lambda: projective_dimension(self.resolution))

    def is_zero(self):
        return self._get("zero", lambda: target_pieces(self.M).is_zero())

    def inputs(self):
        out = {"module": self.label, "presentation": self.M.to_text()}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


class AlgebraContext:
    def __init__(self, name: str, gb: GroebnerBasis, n_max: int, D: int, seed: int = 0,
                 random_modules: int = 20, entry: Optional[CorpusEntry] = None):
        self.name = name
        self.gb = gb
        self.n_max = n_max
        self.D = D
        self.seed = seed
        self.entry = entry
        self.random_modules = random_modules
        self.Rk = minimal_resolution(trivial_module(gb), max(n_max, 1), D)
        self.C: GorensteinClassification = classify(gb, n_max, D, self.Rk)
        if self.C.verdict == "regular" and not self.Rk.terminated:
            self.Rk = minimal_resolution(trivial_module(gb), n_max, D, gldim=self.C.d)
        self.k = ModuleEval(self, "k", trivial_module(gb))
        self.A = ModuleEval(self, "A", free_module(gb))
        self._samples = None

    @classmethod
    def from_entry(cls, entry: CorpusEntry, seed: int, random_modules: int) -> "AlgebraContext":
        P = parse_presentation(entry.path.read_text())
        gb = groebner_truncated(P, entry.D)
        return cls(entry.name, gb, entry.n_max, entry.D, seed, random_modules, entry)

    def samples(self) -> List[ModuleEval]:
        """k, A, a shifted free module, then seeded random modules."""
        if self._samples is None:
            out = [self.k, self.A, ModuleEval(self, "A(-3)", free_module(self.gb, (3,)))]
            out += [ModuleEval(self, label, M, s)
                    for label, M, s in sample_modules(self.gb, self.name, self.seed, self.random_modules)]
            self._samples = out
        return self._samples

    def koszul_regular(self) -> bool:
        kv = self.C.koszul
        return self.C.verdict == "regular" and kv is not None and kv.koszul and kv.proven


def sample_modules(gb: GroebnerBasis, tag: str, seed: int, count: int):
    """Deterministic random modules: cyclic quotients and cokernels of random matrices."""
    out = []
    for s in range(count):
        rng = random.Random(f"{seed}:{tag}:{s}")
        sub = rng.randrange(2 ** 31)
        kind = s % 5
        if kind == 0:
            deg = rng.choice([1, 2])
            M = random_module(gb, sub, 1, (0,), 1, deg)
            label = f"A/(f{deg})"
        elif kind == 1:
            M = random_module(gb, sub, 1, (0,), 2, 2)
            label = "A/(f2,g2)"
        elif kind == 2:
            M = random_module(gb, sub, 1, (0,), 1, 3)
            label = "A/(f3)"
        elif kind == 3:
            M = random_module(gb, sub, 2, (0, 1), 2, 2)
            label = "coker 2x2 (0,1)"
        else:
            M = random_module(gb, sub, 2, (0, 0), 3, 2)
            label = "coker 2x3 (0,0)"
        out.append((f"rand{s}:{label}", M, sub))
    return out


def random_quadratic_algebras(seed: int, count: int = 8, p: int = 32003):
    """Seeded quadratic algebras from families with finite Gröbner bases."""
    rng = random.Random(f"{seed}:quadratic")
    out = []
    for s in range(count):
        kind = s % 4
        nz = lambda: rng.randrange(1, p)  # noqa: E731
        if kind == 0:
            a, b = nz(), rng.randrange(p)
            text = f"field F {p}; gens x:1 y:1; rels y*x - {a}*x*y - {b}*x^2;"
            name = f"skewplane[{a},{b}]"
        elif kind == 1:
            a, b, c = nz(), nz(), nz()
            text = (f"field F {p}; gens x:1 y:1 z:1; "
                    f"rels y*x - {a}*x*y; z*x - {b}*x*z; z*y - {c}*y*z;")
            name = f"skew3[{a},{b},{c}]"
        elif kind == 2:
            q = nz()
            text = f"field F {p}; gens x:1 y:1; rels x^2; y^2; y*x + {q}*x*y;"
            name = f"qexterior[{q}]"
        else:
            a, b = nz(), rng.randrange(p)
            text = f"field F {p}; gens x:1 y:1; rels y*x - {a}*x*y; y^2 - {b}*x^2;"
            name = f"twocubic[{a},{b}]"
        out.append((name, text))
    return out


# --- suites -------------------------------------------------------------------


def _record(ctx, suite, inputs, values, verdict, detail=""):
    rec = {"suite": suite, "algebra": ctx.name}
    rec.update(inputs)
    rec["values"] = values
    rec["verdict"] = verdict
    if detail:
        rec["detail"] = detail
    return rec


def _hint(ctx):
    return f"enlarge the window beyond n_max={ctx.n_max}, D={ctx.D}"


def verify_jorgensen(ctx: AlgebraContext, modules: List[ModuleEval]) -> List[dict]:
    """-CM.reg A <= Ext.reg M - CM.reg M <= Ext.reg k for nonzero M."""
    out = []
    cmA, erk = ctx.A.cm_reg, ctx.k.ext_reg
    for m in modules:
        if m.is_zero():
            continue
        cm, er = m.cm_reg, m.ext_reg
        if cm is None or cmA is None:
            out.append(_record(ctx, "regularity-bounds", m.inputs(), {}, INCONCLUSIVE,
                               "CM.reg unavailable: no supported route"))
            continue
        diff = iv_sub(_iv(er), _iv(cm))
        left = iv_le(iv_sub((0, 0), _iv(cmA)), diff)
        if m is ctx.k:
            right = iv_le((0, 0), _iv(cm))   # Ext.reg k cancels on both sides
        else:
            right = iv_le(diff, _iv(erk))
        verdict = _combine(left, right)
        values = {"cm_reg_A": str(cmA), "ext_reg_k": str(erk), "cm_reg": str(cm),
                  "ext_reg": str(er), "difference": _fmt_iv(diff)}
        out.append(_record(ctx, "regularity-bounds", m.inputs(), values, verdict,
                           _hint(ctx) if verdict == INCONCLUSIVE else ""))
    return out


def verify_main_theorem(ctx: AlgebraContext, modules: List[ModuleEval]) -> List[dict]:
    """Equality CM.reg = Ext.reg over Koszul AS-regular algebras, a witness otherwise."""
    out = []
    if ctx.C.verdict == "undetected":
        return [_record(ctx, "main", {"module": "-"}, {}, INCONCLUSIVE, "algebra not classified")]
    if ctx.koszul_regular():
        for m in modules:
            if m.is_zero():
                continue
            cm, er = m.cm_reg, m.ext_reg
            truth = None if cm is None else iv_eq(_iv(cm), _iv(er))
            verdict = _combine(truth)
            values = {"cm_reg": str(cm), "ext_reg": str(er)}
            out.append(_record(ctx, "main", m.inputs(), values, verdict,
                               _hint(ctx) if verdict == INCONCLUSIVE else ""))
        return out
    tried = []
    for m in modules:
        if m.is_zero() or m.cm_reg is None:
            continue
        tried.append(m.label)
        if iv_eq(_iv(m.cm_reg), _iv(m.ext_reg)) is False:
            values = {"cm_reg": str(m.cm_reg), "ext_reg": str(m.ext_reg)}
            return [_record(ctx, "main", m.inputs(), values, PASS,
                            "witness of CM.reg != Ext.reg over an algebra that is not Koszul AS-regular")]
    return [_record(ctx, "main", {"module": "-"}, {"tried": tried}, INCONCLUSIVE,
                    "no certified witness found; " + _hint(ctx))]


def verify_standard_implies_regular(ctx: AlgebraContext) -> List[dict]:
    C = ctx.C
    kv = C.koszul
    values = {"classification": str(C), "koszul": str(kv) if kv else None,
              "pd_k": str(projective_dimension(ctx.Rk))}
    inputs = {"module": "k"}
    if C.verdict == "undetected" or kv is None or not kv.koszul or not C.standard:
        why = ("classification undetected" if C.verdict == "undetected"
               else "not generated in degree 1" if kv is None
               else "not Koszul" if not kv.koszul else f"not standard (l={C.l}, d={C.d})")
        return [_record(ctx, "standard-regular", inputs, values, PASS, f"hypothesis fails: {why}")]
    d = C.d
    beyond = [(i, j) for (i, j) in betti_table(ctx.Rk).nonzero() if i > d]
    if beyond:
        return [_record(ctx, "standard-regular", inputs, values, FAIL,
                        f"resolution of k nonzero beyond step {d}: {beyond[:3]}")]
    if ctx.Rk.terminated and ctx.Rk.length == d:
        return [_record(ctx, "standard-regular", inputs, values, PASS, "pd k = d")]
    return [_record(ctx, "standard-regular", inputs, values, INCONCLUSIVE, _hint(ctx))]


def verify_romer_formula(ctx: AlgebraContext, modules: List[ModuleEval]) -> List[dict]:
    """CM.reg M - CM.reg A = Ext.reg M when pd M is finite."""
    out = []
    cmA = ctx.A.cm_reg
    for m in modules:
        if m.is_zero() or not m.resolution.terminated:
            continue
        cm, er = m.cm_reg, m.ext_reg
        if cm is None or cmA is None:
            out.append(_record(ctx, "finite-pd", m.inputs(), {}, INCONCLUSIVE, "CM.reg unavailable"))
            continue
        lhs = (0, 0) if m is ctx.A and cm.certified else iv_sub(_iv(cm), _iv(cmA))
        verdict = _combine(iv_eq(lhs, _iv(er)))
        values = {"cm_reg": str(cm), "cm_reg_A": str(cmA), "ext_reg": str(er), "pd": str(m.pd)}
        out.append(_record(ctx, "finite-pd", m.inputs(), values, verdict))
    return out


def verify_auslander_buchsbaum(ctx: AlgebraContext, modules: List[ModuleEval]) -> List[dict]:
    """pd M + depth M = depth A when pd M is finite."""
    out = []
    dA = ctx.A.depth
    for m in modules:
        if m.is_zero() or not m.resolution.terminated:
            continue
        pd = m.pd.value
        dm = m.depth
        lhs = (_add(dm.lo, pd, -1), _add(dm.hi, pd, 1))
        verdict = _combine(iv_eq(lhs, _iv(dA)))
        values = {"pd": str(m.pd), "depth": str(dm), "depth_A": str(dA)}
        out.append(_record(ctx, "auslander-buchsbaum", m.inputs(), values, verdict,
                           _hint(ctx) if verdict == INCONCLUSIVE else ""))
    return out


def euler_check(m: ModuleEval) -> Optional[List[int]]:
    """Degrees n <= D where (sum (-1)^i beta_ij t^j) H_A(t) and H_M(t) disagree."""
    R = m.resolution
    if not R.terminated:
        return None
    gb = m.M.algebra
    D = R.deg_bound
    poly: Dict[int, int] = {}
    for (i, j), b in betti_table(R).nonzero().items():
        poly[j] = poly.get(j, 0) + (-1) ** i * b
    pieces = target_pieces(m.M)
    bad = []
    lo = min(list(poly) + [0])
    for n in range(lo, D + 1):
        lhs = sum(c * len(gb.monomial_basis(n - j)) for j, c in poly.items() if n - j >= 0)
        if lhs != pieces.dim(n):
            bad.append(n)
    return bad


def verify_euler(ctx: AlgebraContext, modules: List[ModuleEval]) -> List[dict]:
    out = []
    for m in modules:
        bad = euler_check(m)
        if bad is None:
            continue
        verdict = PASS if not bad else FAIL
        out.append(_record(ctx, "euler", m.inputs(), {"mismatch_degrees": bad}, verdict))
    return out


def verify_corpus(ctx: AlgebraContext) -> List[dict]:
    """Regression against the expectations stored with the corpus."""
    e = ctx.entry
    if e is None or not e.expected:
        return []
    exp = e.expected
    C = ctx.C
    got = {
        "classification": {"verdict": C.verdict, "d": C.d, "l": C.l},
        "standard": C.standard,
        "koszul": C.koszul.status if C.koszul else None,
        "betti_k": [[i, j, b] for (i, j), b in betti_table(ctx.Rk).nonzero().items() if i <= ctx.n_max],
        "hilbert_prefix": ctx.gb.hilbert_function(ctx.D).as_list(),
        "cm_reg_A": str(ctx.A.cm_reg),
        "ext_reg_k": str(ctx.k.ext_reg),
    }
    if C.koszul and not C.koszul.koszul:
        got["koszul_witness"] = list(C.koszul.witness)
    out = []
    for key in sorted(exp):
        want = exp[key]
        have = got.get(key)
        if key == "hilbert_prefix":
            n = min(len(want), len(have))
            ok = want[:n] == have[:n]
        elif key == "betti_k":
            ok = sorted(x for x in want if x[0] <= ctx.n_max) == sorted(have)
        else:
            ok = want == have
        prov = e.provenance.get(key, {})
        out.append(_record(ctx, "corpus", {"module": "-", "expectation": key},
                           {"expected": want, "computed": have, "provenance": prov},
                           PASS if ok else FAIL))
    return out


# --- driver -------------------------------------------------------------------


def _suite_records(ctx: AlgebraContext, suite: str) -> List[dict]:
    if suite == "regularity-bounds":
        return verify_jorgensen(ctx, ctx.samples())
    if suite == "main":
        return verify_main_theorem(ctx, ctx.samples())
    if suite == "standard-regular":
        return verify_standard_implies_regular(ctx)
    if suite == "finite-pd":
        return verify_romer_formula(ctx, ctx.samples())
    if suite == "auslander-buchsbaum":
        return verify_auslander_buchsbaum(ctx, ctx.samples())
    if suite == "euler":
        return verify_euler(ctx, ctx.samples())
    if suite == "corpus":
        return verify_corpus(ctx)
    raise NcregError(f"unknown suite {suite}")


def run_suites(suites, corpus: Corpus, seed: int = 42, quadratic: int = 8) -> dict:
    """Run the chosen suites; returns the JSON-ready report."""
    for s in suites:
        if s not in SUITES:
            raise NcregError(f"unknown suite {s}; choose from {', '.join(SUITES)} or all")
    records = []
    contexts = [AlgebraContext.from_entry(e, seed, corpus.random_modules) for e in corpus.entries]
    for ctx in contexts:
        for s in suites:
            records.extend(_suite_records(ctx, s))
    if "standard-regular" in suites and quadratic:
        for name, text in random_quadratic_algebras(seed, quadratic):
            gb = groebner_truncated(parse_presentation(text), 6)
            ctx = AlgebraContext(name, gb, 4, 6, seed, 0)
            records.extend(verify_standard_implies_regular(ctx))
    return build_report(suites, seed, contexts, records)


def build_report(suites, seed, contexts, records) -> dict:
    summary = {}
    for s in suites:
        rs = [r for r in records if r["suite"] == s]
        summary[s] = {v: sum(1 for r in rs if r["verdict"] == v) for v in (PASS, FAIL, INCONCLUSIVE)}
    totals = {v: sum(1 for r in records if r["verdict"] == v) for v in (PASS, FAIL, INCONCLUSIVE)}
    algebras = [{"name": c.name, "window": {"n_max": c.n_max, "D": c.D},
                 "classification": str(c.C), "koszul": str(c.C.koszul) if c.C.koszul else None}
                for c in contexts]
    return {"schema": 1, "seed": seed, "suites": list(suites), "algebras": algebras,
            "summary": summary, "totals": totals, "records": records}


def report_exit_code(report: dict) -> int:
    t = report["totals"]
    if t[FAIL]:
        return 1
    if not t[PASS] and t[INCONCLUSIVE]:
        return 3
    return 0


def summary_table(report: dict) -> str:
    rows = [("suite", PASS, FAIL, INCONCLUSIVE)]
    for s, c in report["summary"].items():
        rows.append((s, str(c[PASS]), str(c[FAIL]), str(c[INCONCLUSIVE])))
    t = report["totals"]
    rows.append(("total", str(t[PASS]), str(t[FAIL]), str(t[INCONCLUSIVE])))
    widths = [max(len(r[k]) for r in rows) for k in range(4)]
    lines = ["  ".join(r[k].ljust(widths[k]) if k == 0 else r[k].rjust(widths[k]) for k in range(4))
             for r in rows]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines)
