"""Command line interface: ``ncreg <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .cache import open_cache
from .core import NcregError
from .groebner import Budget, CertificationError, GroebnerBasis, groebner_truncated
from .parser import module_algebra_ref, parse_module, parse_polynomial, parse_presentation, serialize_presentation
from .regularity import (
    UnsupportedContext,
    classify,
    cm_regularity,
    compute_depth,
    ext_regularity,
    is_koszul,
)
from .resolution import (
    MinimalResolution,
    ModuleError,
    betti_table,
    free_module,
    minimal_resolution,
    module_from_text,
    projective_dimension,
    trivial_module,
)
from . import harness

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class InputError(NcregError):
    pass


# --- loading --------------------------------------------------------------------


class Session:
    """Loaded algebra and module, with optional caching of heavy results."""

    def __init__(self, args):
        self.args = args
        self.cache = open_cache(args.cache_dir)
        self.D = args.max_deg
        self.n_max = args.max_hom
        alg_path = args.algebra
        self.module_text = None
        mod = getattr(args, "module", None)
        if mod and mod not in ("trivial", "free"):
            mp = Path(mod)
            self.module_text = _read(mp)
            if alg_path is None:
                ref = module_algebra_ref(self.module_text)
                if ref:
                    alg_path = str(mp.parent / ref)
        if alg_path is None:
            raise InputError("--algebra is required")
        self.algebra_name = Path(alg_path).stem
        self.P = parse_presentation(_read(Path(alg_path)))
        if self.D < self.P.max_relation_degree():
            raise InputError(f"--max-deg {self.D} is below the largest relation degree "
                             f"{self.P.max_relation_degree()}")
        self._gb = None
        self.warnings = []
        if self.gb.certified_degree < self.D:
            self.warnings.append(f"budget exhausted: results certified only up to degree "
                                 f"{self.gb.certified_degree}")
            self.D = self.gb.certified_degree

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            budget = Budget(max_elements=self.args.budget)
            payload = {"presentation": serialize_presentation(self.P), "D": self.D,
                       "budget": self.args.budget}
            data = self.cache.get("groebner", payload) if self.cache else None
            if data is not None:
                self._gb = GroebnerBasis.from_json(self.P, data)
            else:
                self._gb = groebner_truncated(self.P, self.D, budget)
                if self.cache:
                    self.cache.put("groebner", payload, self._gb.to_json())
        return self._gb

    def module(self):
        mod = getattr(self.args, "module", None) or "trivial"
        if mod == "trivial":
            return trivial_module(self.gb)
        if mod == "free":
            return free_module(self.gb)
        mt = parse_module(self.module_text, self.P)
        return module_from_text(self.gb, mt, Path(mod).stem)

    def resolve(self, M, n_max=None, gldim=None) -> MinimalResolution:
        n_max = self.n_max if n_max is None else n_max
        payload = {"presentation": serialize_presentation(self.P), "module": M.to_json(),
                   "n_max": n_max, "D": self.D, "gldim": gldim, "budget": self.args.budget}
        data = self.cache.get("resolution", payload) if self.cache else None
        if data is not None:
            return MinimalResolution.from_json(self.gb, data)
        R = minimal_resolution(M, n_max, self.D, gldim=gldim)
        if self.cache:
            self.cache.put("resolution", payload, R.to_json())
        return R

    def classification(self):
        Rk = self.resolve(trivial_module(self.gb))
        return classify(self.gb, self.n_max, self.D, Rk)


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


# --- output -----------------------------------------------------------------------


def emit_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _header(sess: Session, command: str, **extra):
    out = {"schema": 1, "command": command, "algebra": sess.algebra_name,
           "window": {"n_max": sess.n_max, "D": sess.D}}
    out.update(extra)
    return out


def betti_grid(B):
    nz = B.nonzero()
    rows = range(0, max((i for i, _ in nz), default=0) + 1)
    if B.terminated:
        rows = range(0, max(max((i for i, _ in nz), default=-1), 0) + 1)
    js = [j for _, j in nz]
    cols = range(min(js), max(js) + 1) if js else range(0, 1)
    return rows, cols, nz


def betti_csv(B) -> str:
    rows, cols, nz = betti_grid(B)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i"] + [str(j) for j in cols])
    for i in rows:
        w.writerow([str(i)] + [str(nz.get((i, j), 0)) for j in cols])
    return buf.getvalue()


def betti_text(B) -> str:
    """Table indexed by homological degree (columns) and j - i (rows)."""
    nz = B.nonzero()
    if not nz:
        return "zero module\n"
    cols = range(0, max(i for i, _ in nz) + 1)
    diag = sorted({j - i for i, j in nz})
    rows = range(diag[0], diag[-1] + 1)
    cells = [[""] + [str(i) for i in cols],
             ["total:"] + [str(sum(b for (ii, _), b in nz.items() if ii == i)) for i in cols]]
    for r in rows:
        cells.append([f"{r}:"] + [str(nz.get((i, i + r), ".")) if (i, i + r) in nz else "."
                                  for i in cols])
    width = [max(len(row[k]) for row in cells) for k in range(len(cells[0]))]
    lines = [" ".join(c.rjust(width[k]) for k, c in enumerate(row)) for row in cells]
    status = "terminated" if B.terminated else f"truncated at n_max={B.hom_bound}, D={B.deg_bound}"
    return "\n".join(lines) + f"\n({status})\n"


# --- commands ---------------------------------------------------------------------


def cmd_basis(sess, args):
    gb = sess.gb
    degs = [args.degree] if args.degree is not None else list(range(0, sess.D + 1))
    data = {d: [sess.P.format_word(w) for w in gb.monomial_basis(d)] for d in degs}
    if args.format == "json":
        return emit_json(_header(sess, "basis", basis={str(d): ws for d, ws in data.items()}))
    if args.format == "csv":
        return "degree,word\n" + "".join(f"{d},{w}\n" for d, ws in data.items() for w in ws)
    return "".join(f"{d}: {' '.join(ws) if ws else '-'}\n" for d, ws in data.items())


def cmd_hilbert(sess, args):
    if getattr(args, "module", None):
        from .regularity import target_pieces
        pieces = target_pieces(sess.module())
        lo = min(pieces.M.cover.shifts, default=0)
        dims = {d: pieces.dim(d) for d in range(lo, sess.D + 1)}
    else:
        dims = sess.gb.hilbert_function(sess.D).dims
    if args.format == "json":
        return emit_json(_header(sess, "hilbert", hilbert=[[d, n] for d, n in sorted(dims.items())]))
    if args.format == "csv":
        return "degree,dim\n" + "".join(f"{d},{n}\n" for d, n in sorted(dims.items()))
    return " ".join(str(n) for _, n in sorted(dims.items())) + "\n"


def cmd_nf(sess, args):
    if not args.poly:
        raise InputError("nf needs --poly")
    p = parse_polynomial(args.poly, sess.P)
    nf = sess.gb.normal_form(p)
    text = sess.P.format_poly(nf)
    if args.format == "json":
        return emit_json(_header(sess, "nf", input=args.poly, normal_form=text))
    return text + "\n"


def _resolution_payload(sess, R):
    steps = []
    for i, st in enumerate(R.steps):
        entry = {"i": i, "shifts": list(st.module.shifts), "complete": R.step_complete(i)}
        if i >= 1:
            prev = R.free(i - 1)
            entry["differential"] = [
                [sess.P.format_poly(R.entry(i, t, c)) for c in range(st.module.rank)]
                for t in range(prev.rank)
            ]
        steps.append(entry)
    return {"terminated": R.terminated, "pd": str(projective_dimension(R)), "steps": steps}


def cmd_resolve(sess, args):
    M = sess.module()
    R = sess.resolve(M)
    payload = _resolution_payload(sess, R)
    if args.format == "json":
        return emit_json(_header(sess, "resolve", module=M.name, resolution=payload))
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "row", "col", "entry"])
        for st in payload["steps"]:
            for t, row in enumerate(st.get("differential", [])):
                for c, e in enumerate(row):
                    if e != "0":
                        w.writerow([st["i"], t, c, e])
        return buf.getvalue()
    lines = []
    for st in payload["steps"]:
        if not st["shifts"] and st["i"] > 0:
            break
        mod = " + ".join(f"A({-s})" for s in st["shifts"]) or "0"
        lines.append(f"F_{st['i']} = {mod}" + ("" if st["complete"] else "  (incomplete)"))
        for row in st.get("differential", []):
            lines.append("    [ " + ", ".join(row) + " ]")
    lines.append(f"pd = {payload['pd']}" + (" (terminated)" if payload["terminated"] else ""))
    return "\n".join(lines) + "\n"


def cmd_betti(sess, args):
    M = sess.module()
    B = betti_table(sess.resolve(M))
    if args.format == "json":
        return emit_json(_header(sess, "betti", module=M.name, **B.to_json()))
    if args.format == "csv":
        return betti_csv(B)
    return betti_text(B)


def _value_output(sess, args, command, module_name, v):
    if args.format == "json":
        return emit_json(_header(sess, command, module=module_name, **{"result": v.to_json()}))
    if args.format == "csv":
        return f"value,certified\n{v.value},{str(v.certified).lower()}\n"
    return f"{v}\n"


def cmd_ext_reg(sess, args):
    M = sess.module()
    return _value_output(sess, args, "ext-reg", M.name, ext_regularity(betti_table(sess.resolve(M))))


def cmd_cm_reg(sess, args):
    M = sess.module()
    from .regularity import cm_regularity_torsion
    v = cm_regularity_torsion(M, (sess.n_max, sess.D))
    if v is None:
        C = sess.classification()
        n = max(sess.n_max, (C.d or 0) + 1)
        gldim = C.d if C.verdict == "regular" else None
        R = sess.resolve(M, n, gldim) if C.is_gorenstein else None
        v = cm_regularity(M, C, sess.n_max, sess.D, R)
    return _value_output(sess, args, "cm-reg", M.name, v)


def cmd_depth(sess, args):
    M = sess.module()
    Rk = sess.resolve(trivial_module(sess.gb))
    return _value_output(sess, args, "depth", M.name, compute_depth(M, Rk))


def cmd_koszul(sess, args):
    B = betti_table(sess.resolve(trivial_module(sess.gb)))
    kv = is_koszul(B, sess.gb)
    if args.format == "json":
        return emit_json(_header(sess, "koszul", result=kv.to_json()))
    if args.format == "csv":
        w = ",".join(map(str, kv.witness)) if kv.witness else ""
        return f"status,up_to,witness\n{kv.status},{kv.up_to if kv.koszul else ''},\"{w}\"\n"
    return f"{kv}\n"


def classification_values(sess, C):
    gb = sess.gb
    A = free_module(gb)
    try:
        cm = cm_regularity(A, C, sess.n_max, sess.D).to_json()
    except UnsupportedContext as e:
        cm = {"value": None, "certified": False, "note": str(e)}
    er = ext_regularity(betti_table(C.resolution)).to_json()
    dp = compute_depth(A, C.resolution).to_json()
    return {"cm_reg": cm, "ext_reg": er, "depth": dp}


def cmd_classify(sess, args):
    C = sess.classification()
    values = classification_values(sess, C)
    if args.format == "json":
        out = _header(sess, "classify")
        out.update(C.to_json())
        out["values"] = values
        return emit_json(out)
    if args.format == "csv":
        return ("verdict,d,l,standard,koszul,cm_reg_A,ext_reg_k,depth_A\n"
                f"{C.verdict},{_c(C.d)},{_c(C.l)},{_c(C.standard)},"
                f"{C.koszul.status if C.koszul else ''},{values['cm_reg']['value']},"
                f"{values['ext_reg']['value']},{values['depth']['value']}\n")
    lines = [f"verdict:   {C}",
             f"standard:  {C.standard}",
             f"koszul:    {C.koszul if C.koszul else 'n/a (not generated in degree 1)'}",
             f"CM.reg A:  {_rv(values['cm_reg'])}",
             f"Ext.reg k: {_rv(values['ext_reg'])}",
             f"depth A:   {_rv(values['depth'])}",
             f"window:    n_max={sess.n_max}, D={sess.D}" + (" (exact)" if C.exact else ""),
             f"note:      {C.hypotheses_note}"]
    lines += [f"  {d}" for d in C.diagnostics]
    return "\n".join(lines) + "\n"


def _c(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    return str(x)


def _rv(v):
    if v.get("certified"):
        return str(v["value"])
    b = v.get("bound")
    return f"{b}{v['value']}" if b else str(v["value"])


def cmd_verify(args):
    suites = list(harness.SUITES) if "all" in args.suite else args.suite
    corpus = harness.load_corpus(args.corpus)
    report = harness.run_suites(suites, corpus, seed=args.seed)
    text = emit_json(report)
    if args.report:
        Path(args.report).write_text(text)
    summary = harness.summary_table(report) + "\n"
    for r in report["records"]:
        if r["verdict"] == "fail":
            summary += f"FAIL {r['suite']} {r['algebra']} {r.get('module', '')}: {json.dumps(r['values'])}\n"
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "algebra", "module", "verdict", "detail"])
        for r in report["records"]:
            w.writerow([r["suite"], r["algebra"], r.get("module", ""), r["verdict"], r.get("detail", "")])
        return buf.getvalue(), summary, harness.report_exit_code(report)
    if args.format == "table":
        return summary, "", harness.report_exit_code(report)
    return text, summary, harness.report_exit_code(report)


COMMANDS = {
    "basis": cmd_basis,
    "hilbert": cmd_hilbert,
    "nf": cmd_nf,
    "resolve": cmd_resolve,
    "betti": cmd_betti,
    "ext-reg": cmd_ext_reg,
    "cm-reg": cmd_cm_reg,
    "depth": cmd_depth,
    "koszul": cmd_koszul,
    "classify": cmd_classify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="algebra presentation file")
    common.add_argument("--module", help="module file, 'trivial' (default) or 'free'")
    common.add_argument("--max-deg", type=int, default=8, help="internal degree bound D")
    common.add_argument("--max-hom", type=int, default=6, help="homological degree bound n_max")
    common.add_argument("--format", choices=("table", "json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--cache-dir", default=None, help="cache directory (default: $NCREG_CACHE)")
    common.add_argument("--budget", type=int, default=None, help="maximal number of Gröbner elements")

    p = argparse.ArgumentParser(prog="ncreg", description="Regularity computations for graded algebras.")
    p.add_argument("--version", action="version", version=f"ncreg {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "basis":
            sp.add_argument("--degree", type=int, default=None)
        if name == "nf":
            sp.add_argument("--poly", required=False)
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("--suite", nargs="+", default=["all"],
                    help="suites to run: all or any of " + ", ".join(harness.SUITES))
    sp.add_argument("--corpus", default=None, help="corpus directory (default: bundled)")
    sp.add_argument("--report", default=None, help="also write the JSON report here")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        if args.max_deg < 0 or args.max_hom < 0:
            raise InputError("window bounds must be nonnegative")
        if args.command == "verify":
            out, summary, code = cmd_verify(args)
            stdout.write(out)
            if summary:
                stderr.write(summary)
            return code
        sess = Session(args)
        for w in sess.warnings:
            stderr.write(f"ncreg: warning: {w}\n")
        stdout.write(COMMANDS[args.command](sess, args))
        return EXIT_OK
    except CertificationError as e:
        stderr.write(f"ncreg: inconclusive: {e}\n")
        return EXIT_INCONCLUSIVE
    except (NcregError, ModuleError, UnsupportedContext) as e:
        stderr.write(f"ncreg: error: {e}\n")
        return EXIT_INPUT


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
