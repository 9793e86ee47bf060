"""Regularity invariants, depth, Koszulness and AS-Gorenstein classification.

All Ext groups are computed as cohomology of Hom_A(F, T) for a minimal
resolution F and a target module T given by a presentation:
Hom_A(A(-s), T)_j = T_{s+j}, and a cochain f is pushed along the
differential by (delta f)(e_b) = sum_c a_{c,b} f(e_c).

Values that are only partially known are carried as closed intervals of
extended integers; a value is certified when the interval is a point.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .core import NcregError
from .groebner import CertificationError, GroebnerBasis
from .linalg import Echelon
from .resolution import (
    BettiTable,
    GradedPieces,
    MinimalResolution,
    ModulePresentation,
    betti_table,
    free_module,
    minimal_resolution,
    trivial_module,
)


class UnsupportedContext(NcregError):
    """Neither CM-regularity route applies to the given module and algebra."""


@functools.total_ordering
class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        if isinstance(other, int):
            return self.sign < 0
        return NotImplemented

    def __hash__(self):
        return hash(("inf", self.sign))

    def __neg__(self):
        return POS_INF if self.sign < 0 else NEG_INF

    def __add__(self, other):
        if isinstance(other, _Infinity) and other.sign != self.sign:
            raise ValueError("+inf + -inf is undefined")
        if isinstance(other, (int, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"

    __str__ = __repr__


POS_INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def encode_ext(x):
    return str(x) if isinstance(x, _Infinity) else x


def decode_ext(x):
    if x == "+inf":
        return POS_INF
    if x == "-inf":
        return NEG_INF
    return int(x)


@dataclass(frozen=True)
class RegularityValue:
    """An extended integer known to lie in [lo, hi]."""

    lo: object
    hi: object
    window: Tuple[int, int] = (0, 0)
    route: str = ""
    note: str = ""

    @classmethod
    def exact(cls, v, window=(0, 0), route="", note=""):
        return cls(v, v, window, route, note)

    @property
    def certified(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self):
        if self.certified or self.hi == POS_INF:
            return self.lo
        if self.lo == NEG_INF:
            return self.hi
        return self.lo

    @property
    def bound(self) -> Optional[str]:
        if self.certified:
            return None
        if self.hi == POS_INF or self.lo != NEG_INF:
            return ">="
        return "<="

    def __str__(self):
        if self.certified:
            return str(self.lo)
        if self.lo == NEG_INF and self.hi == POS_INF:
            return "unknown"
        if self.hi == POS_INF:
            return f">={self.lo}"
        if self.lo == NEG_INF:
            return f"<={self.hi}"
        return f"[{self.lo},{self.hi}]"

    def to_json(self):
        out = {"value": encode_ext(self.value), "certified": self.certified}
        if not self.certified:
            out["bound"] = self.bound
            out["lo"] = encode_ext(self.lo)
            out["hi"] = encode_ext(self.hi)
        out["window"] = {"n_max": self.window[0], "D": self.window[1]}
        if self.route:
            out["route"] = self.route
        if self.note:
            out["note"] = self.note
        return out


# --- Hom complexes ------------------------------------------------------------


def target_pieces(M: ModulePresentation) -> GradedPieces:
    """Graded pieces of M, known up to the Gröbner certification degree."""
    return GradedPieces(M, M.algebra.certified_degree)


class HomComplex:
    """The cochain complex Hom_A(F, T), one internal degree at a time."""

    def __init__(self, R: MinimalResolution, T: GradedPieces):
        if R.algebra is not T.gb:
            raise NcregError("resolution and target live over different algebras")
        self.R = R
        self.T = T
        self._entries: Dict[int, list] = {}
        self._ranks: Dict[Tuple[int, int], int] = {}

    def shifts(self, i):
        return self.R.free(i).shifts if i >= 0 else ()

    def _step_known(self, i) -> bool:
        return i < 0 or self.R.step_complete(i)

    def _t_known(self, n) -> bool:
        T = self.T
        if n < T.min_degree or n <= T.D:
            return True
        top = T.top_degree()
        return top is not None and n > top

    def entries(self, i):
        """For each generator b of F_i: {c: polynomial} with d(e_b) = sum p_c e_c."""
        if i not in self._entries:
            rows = []
            for img in self.R.differential(i):
                by_c: Dict[int, dict] = {}
                for (c, w), a in img.items():
                    by_c.setdefault(c, {})[w] = a
                rows.append(by_c)
            self._entries[i] = rows
        return self._entries[i]

    def cochain_basis(self, i, j):
        return [(c, key) for c, s in enumerate(self.shifts(i)) for key in self.T.basis(s + j)]

    def rank_delta(self, i, j) -> int:
        """Rank of delta^i: Hom(F_i, T)_j -> Hom(F_{i+1}, T)_j."""
        if (i, j) in self._ranks:
            return self._ranks[(i, j)]
        if i < 0 or not self.shifts(i) or not self.shifts(i + 1):
            self._ranks[(i, j)] = 0
            return 0
        T, F = self.T, self.R.algebra.field
        si = self.shifts(i)
        rows = self.entries(i + 1)
        # invert: for each c, the b's it feeds
        feeds: Dict[int, List[Tuple[int, dict]]] = {}
        for b, by_c in enumerate(rows):
            for c, p in by_c.items():
                feeds.setdefault(c, []).append((b, p))
        E = Echelon(F)
        for c, key in self.cochain_basis(i, j):
            vec = {}
            for b, p in feeds.get(c, ()):
                img = T.act(p, si[c] + j, {key: F.one})
                for k2, a in img.items():
                    vec[(b, k2)] = a
            if vec:
                E.add(vec)
        self._ranks[(i, j)] = E.rank
        return E.rank

    def j_range(self, i):
        """(lo, hi, full): degrees where H^i is computable; full means H^i
        vanishes outside [lo, hi].  None if some needed step is incomplete."""
        if not all(self._step_known(k) for k in (i - 1, i, i + 1)):
            return None
        si = self.shifts(i)
        if not si:
            return (0, -1, True)
        lo = -max(si)
        top = self.T.top_degree()
        if top is not None:
            return (lo, top - min(si), True)
        used = [s for k in (i - 1, i, i + 1) for s in self.shifts(k)]
        hi = self.T.D - max(used)
        return (lo, hi, False)

    def dim_h(self, i, j) -> int:
        rng = self.j_range(i)
        if rng is None:
            raise CertificationError(f"Ext^{i} needs incomplete resolution steps")
        for k in (i - 1, i, i + 1):
            for s in self.shifts(k):
                if not self._t_known(s + j):
                    raise CertificationError(f"Ext^{i} in degree {j} needs the target in degree {s + j}")
        dim_c = len(self.cochain_basis(i, j))
        if dim_c == 0:
            return 0
        return dim_c - self.rank_delta(i, j) - self.rank_delta(i - 1, j)

    def cohomology(self, i) -> Optional[Tuple[Dict[int, int], bool]]:
        """({j: dim H^i_j} over the computable range, full flag)."""
        rng = self.j_range(i)
        if rng is None:
            return None
        lo, hi, full = rng
        return {j: self.dim_h(i, j) for j in range(lo, hi + 1)}, full

    def max_index(self) -> int:
        """Largest cohomological index whose steps are all available."""
        R = self.R
        if R.terminated:
            return R.length + 1
        i = -1
        while self.j_range(i + 1) is not None:
            i += 1
        return i


def ext_groups(R: MinimalResolution, T: ModulePresentation, i_max: Optional[int] = None):
    """{i: ({j: dim}, full)} for Ext^i(M, T) with M the resolved module."""
    H = HomComplex(R, target_pieces(T))
    top = H.max_index()
    if i_max is not None:
        top = min(top, i_max)
    out = {}
    for i in range(0, top + 1):
        got = H.cohomology(i)
        if got is None:
            break
        out[i] = got
    return out


# --- Ext-regularity and Koszulness ----------------------------------------------


def ext_regularity(B: BettiTable) -> RegularityValue:
    window = (B.hom_bound, B.deg_bound)
    nz = B.nonzero()
    if not nz:
        if B.terminated:
            return RegularityValue.exact(NEG_INF, window, note="zero module")
        return RegularityValue(NEG_INF, POS_INF, window)
    lo = max(j - i for (i, j) in nz)
    return RegularityValue(lo, lo if B.terminated else POS_INF, window)


@dataclass(frozen=True)
class KoszulVerdict:
    koszul: bool
    up_to: Optional[int] = None
    witness: Optional[Tuple[int, int]] = None
    proven: bool = False
    window: Tuple[int, int] = (0, 0)

    @property
    def status(self) -> str:
        if not self.koszul:
            return "not_koszul"
        return "koszul" if self.proven else "koszul_up_to"

    def __str__(self):
        if not self.koszul:
            return f"not_koszul witness {self.witness}"
        return "koszul" if self.proven else f"koszul_up_to({self.up_to})"

    def to_json(self):
        out = {"status": self.status}
        if self.koszul:
            out["up_to"] = self.up_to
        else:
            out["witness"] = list(self.witness)
        out["window"] = {"n_max": self.window[0], "D": self.window[1]}
        return out


def is_koszul(B: BettiTable, algebra: GroebnerBasis) -> KoszulVerdict:
    """Verdict from the Betti table of the trivial module."""
    if not algebra.presentation.generated_in_degree_one():
        raise NcregError("Koszulness is only defined for algebras generated in degree 1")
    window = (B.hom_bound, B.deg_bound)
    off = sorted((i, j) for (i, j) in B.nonzero() if j != i)
    if off:
        return KoszulVerdict(False, witness=off[0], proven=True, window=window)
    n = -1
    for ok in B.complete_steps:
        if not ok:
            break
        n += 1
    if B.terminated:
        n = B.hom_bound
    return KoszulVerdict(True, up_to=n, proven=B.terminated, window=window)


# --- depth ------------------------------------------------------------------------


def compute_depth(M: ModulePresentation, Rk: MinimalResolution, D: Optional[int] = None) -> RegularityValue:
    """Least i with Ext^i(k, M) != 0.

    Vanishing of the lower Ext groups is checked in every computable internal
    degree; for finite-dimensional M that is all of them.
    """
    if Rk.algebra is not M.algebra:
        raise NcregError("module and resolution of k over different algebras")
    window = (Rk.hom_bound, Rk.deg_bound)
    T = target_pieces(M)
    if T.is_zero():
        return RegularityValue.exact(POS_INF, window, note="zero module")
    H = HomComplex(Rk, T)
    last = -1
    all_full = True
    for i in range(0, H.max_index() + 1):
        got = H.cohomology(i)
        if got is None:
            break
        dims, full = got
        if any(dims.values()):
            note = "" if all_full else "lower Ext groups vanish in the computed degrees"
            return RegularityValue.exact(i, window, note=note)
        all_full = all_full and full
        last = i
    return RegularityValue(last + 1, POS_INF, window, note="no nonvanishing Ext(k, M) in window")


# --- classification --------------------------------------------------------------

HYPOTHESES_NOTE = ("Noetherianity and the chi-condition are assumed, not verified; "
                   "the twisting automorphism of the dualizing complex is ignored "
                   "(graded dimensions do not see it)")


@dataclass
class GorensteinClassification:
    verdict: str                     # undetected | gorenstein | regular
    d: Optional[int] = None
    l: Optional[int] = None
    koszul: Optional[KoszulVerdict] = None
    window: Tuple[int, int] = (0, 0)
    ext_table: Dict[Tuple[int, int], int] = dc_field(default_factory=dict)
    diagnostics: List[str] = dc_field(default_factory=list)
    hypotheses_note: str = HYPOTHESES_NOTE
    resolution: Optional[MinimalResolution] = None

    @property
    def standard(self) -> Optional[bool]:
        if self.verdict == "undetected":
            return None
        return self.l == self.d

    @property
    def exact(self) -> bool:
        return self.verdict == "regular"

    @property
    def is_gorenstein(self) -> bool:
        return self.verdict in ("gorenstein", "regular")

    def __str__(self):
        if self.verdict == "undetected":
            return "undetected"
        return f"{self.verdict}({self.d}, {self.l})"

    def to_json(self):
        return {
            "verdict": self.verdict,
            "d": self.d,
            "l": self.l,
            "standard": self.standard,
            "koszul": self.koszul.to_json() if self.koszul else None,
            "ext_k_A": [[i, j, n] for (i, j), n in sorted(self.ext_table.items()) if n],
            "hypotheses_note": self.hypotheses_note,
            "diagnostics": list(self.diagnostics),
            "certification": {"n_max": self.window[0], "D": self.window[1], "exact": self.exact},
        }


def classify(algebra: GroebnerBasis, n_max: int, D: int,
             Rk: Optional[MinimalResolution] = None) -> GorensteinClassification:
    """AS-Gorenstein / AS-regular type from Ext^i(k, A), computed degreewise."""
    gb = algebra
    if Rk is None:
        Rk = minimal_resolution(trivial_module(gb), n_max, D)
    window = (n_max, D)
    kv = None
    if gb.presentation.generated_in_degree_one():
        kv = is_koszul(betti_table(Rk), gb)
    groups = ext_groups(Rk, free_module(gb))
    table = {}
    diags = []
    for i, (dims, full) in groups.items():
        for j, n in dims.items():
            table[(i, j)] = n
        if dims:
            diags.append(f"Ext^{i}(k,A) computed for j in [{min(dims)}, {max(dims)}]"
                         + (" (all degrees)" if full else ""))
    nz = {k: v for k, v in table.items() if v}
    C = GorensteinClassification("undetected", koszul=kv, window=window, ext_table=table,
                                 diagnostics=diags, resolution=Rk)
    if not groups:
        diags.append("no Ext group computable: enlarge the window")
        return C
    if len(nz) != 1 or next(iter(nz.values())) != 1:
        diags.append(f"Ext(k,A) nonzero at {sorted(nz)}: not of Gorenstein shape" if nz
                     else "no nonvanishing Ext(k,A) found in the window")
        return C
    (d, j), = nz.keys()
    l = -j
    if Rk.terminated:
        if d == Rk.length:
            C.verdict, C.d, C.l = "regular", d, l
        else:
            diags.append(f"single Ext class at i={d} but pd k = {Rk.length}")
        return C
    C.verdict, C.d, C.l = "gorenstein", d, l
    diags.append("Gorenstein shape certified inside the window only")
    return C


# --- Castelnuovo-Mumford regularity ----------------------------------------------


def cm_regularity_torsion(M: ModulePresentation, window=(0, 0)) -> Optional[RegularityValue]:
    """CM.reg of a module certified finite-dimensional: its top degree."""
    T = target_pieces(M)
    top = T.top_degree()
    if top is None:
        return None
    if top < T.min_degree:
        return RegularityValue.exact(NEG_INF, window, "torsion", "zero module")
    return RegularityValue.exact(top, window, "torsion")


def cm_regularity_duality(M: ModulePresentation, C: GorensteinClassification, n_max: int, D: int,
                          R: Optional[MinimalResolution] = None) -> RegularityValue:
    """CM.reg via local duality: max_e (d - e - l - mindeg Ext^e(M, A)), 0 <= e <= d."""
    if not C.is_gorenstein:
        raise UnsupportedContext("local duality needs an AS-Gorenstein classification")
    gb = M.algebra
    d, l = C.d, C.l
    if R is None:
        R = minimal_resolution(M, max(n_max, d + 1), D)
    window = (R.hom_bound, R.deg_bound)
    if R.terminated and R.length < 0:
        return RegularityValue.exact(NEG_INF, window, "local-duality", "zero module")
    H = HomComplex(R, target_pieces(free_module(gb)))
    lo, hi = NEG_INF, NEG_INF
    missing = []
    e_top = d if not R.terminated else min(d, R.length)
    for e in range(0, e_top + 1):
        rng = H.j_range(e)
        if rng is None:
            hi = POS_INF
            missing.append(f"Ext^{e}(M,A) not computable (resolution step incomplete)")
            continue
        a, b, full = rng
        found = None
        for j in range(a, b + 1):
            if H.dim_h(e, j):
                found = j
                break
        if found is not None:
            term = d - e - l - found
            lo = max(lo, term)
            hi = max(hi, term)
        elif not full:
            hi = max(hi, d - e - l - (b + 1))
            missing.append(f"Ext^{e}(M,A) vanishes up to degree {b}")
    note = "; ".join(missing)
    if C.verdict == "gorenstein":
        note = (note + "; " if note else "") + "Gorenstein type certified to window only"
    return RegularityValue(lo, max(lo, hi), window, "local-duality", note)


def cm_regularity(M: ModulePresentation, C: Optional[GorensteinClassification] = None,
                  n_max: int = 6, D: int = 8, R: Optional[MinimalResolution] = None) -> RegularityValue:
    """CM.reg by the torsion route if M is finite-dimensional, else by local duality."""
    got = cm_regularity_torsion(M, (n_max, D))
    if got is not None:
        return got
    if C is None or not C.is_gorenstein:
        raise UnsupportedContext(
            "CM.reg needs a finite-dimensional module or an AS-Gorenstein classification")
    return cm_regularity_duality(M, C, n_max, D, R)


# --- interval comparisons used by the verification suites -----------------------


def interval_le(a: RegularityValue, b: RegularityValue, shift_a=0, shift_b=0):
    """Truth of a + shift_a <= b + shift_b: True, False, or None when undecided."""
    if a.hi + shift_a <= b.lo + shift_b:
        return True
    if a.lo + shift_a > b.hi + shift_b:
        return False
    return None
