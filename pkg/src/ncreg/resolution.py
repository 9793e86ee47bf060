"""Graded modules, minimal graded free resolutions and Betti tables.

Elements of a free module F = ⊕ A(-s_t) are stored flat, as dicts
``{(t, word): coefficient}`` with ``word`` a normal word.  A map between free
modules is the list of images of the generators (its columns).  Everything
is computed one internal degree at a time by exact linear algebra.

Termination is certified with a degree bound on the generators of each
syzygy module.  For the image U of a differential, the minimal leading
monomials of U (for a left-compatible module order) are read off the
degreewise echelon forms.  If the largest of them sits in degree G and the
window reaches G + slack, where slack bounds the degree of a left factor
that can create an algebra leading word across the boundary, then U's
left Gröbner basis is complete and its syzygies live in degrees
<= max(top generator degree, G + slack).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .core import NcPolynomial, NcregError, Presentation, Word
from .groebner import CertificationError, GroebnerBasis, groebner_truncated
from .linalg import Echelon
from .parser import ModuleText

Flat = Dict[Tuple[int, Word], object]


class ModuleError(NcregError):
    pass


@dataclass(frozen=True)
class GradedFreeModule:
    shifts: Tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def max_shift(self) -> Optional[int]:
        return max(self.shifts) if self.shifts else None

    def coords(self, gb: GroebnerBasis, j: int) -> List[Tuple[int, Word]]:
        """Monomial basis of the degree-j piece, ordered by (generator, word)."""
        return [(t, w) for t, s in enumerate(self.shifts) for w in gb.monomial_basis(j - s)]

    def dim(self, gb: GroebnerBasis, j: int) -> int:
        return sum(len(gb.monomial_basis(j - s)) for s in self.shifts)


def left_multiply(gb: GroebnerBasis, u: Word, v: Flat) -> Flat:
    F = gb.field
    out: Flat = {}
    for (t, w), a in v.items():
        for w2, b in gb.nf_word(u + w).items():
            key = (t, w2)
            y = F.add(out.get(key, F.zero), F.mul(a, b))
            if y:
                out[key] = y
            else:
                out.pop(key, None)
    return out


def left_multiply_poly(gb: GroebnerBasis, p: Dict[Word, object], v: Flat) -> Flat:
    F = gb.field
    out: Flat = {}
    for u, c in p.items():
        F.axpy(out, c, left_multiply(gb, u, v))
    return out


def flat_degree(gb: GroebnerBasis, shifts: Sequence[int], v: Flat) -> Optional[int]:
    degs = {shifts[t] + gb.degree_of(w) for t, w in v}
    if len(degs) > 1:
        raise ModuleError("inhomogeneous module element")
    return degs.pop() if degs else None


@dataclass
class ModulePresentation:
    """M = cover / (A * relations); relations are flat elements of the cover."""

    algebra: GroebnerBasis
    cover: GradedFreeModule
    relations: Tuple[Flat, ...] = ()
    name: str = "M"
    kind: str = "file"

    def __post_init__(self):
        gb = self.algebra
        rels = []
        degs = []
        for r in self.relations:
            r = {k: v for k, v in r.items() if v}
            for t, _ in r:
                if not 0 <= t < self.cover.rank:
                    raise ModuleError(f"relation refers to cover generator {t}")
            r = self._normalize(r)
            if not r:
                continue
            rels.append(r)
            degs.append(flat_degree(gb, self.cover.shifts, r))
        self.relations = tuple(rels)
        self.rel_degrees = tuple(degs)

    def _normalize(self, r: Flat) -> Flat:
        gb = self.algebra
        F = gb.field
        out: Flat = {}
        for (t, w), c in r.items():
            gb._check(gb.degree_of(w))
            for w2, b in gb.nf_word(w).items():
                key = (t, w2)
                y = F.add(out.get(key, F.zero), F.mul(c, b))
                if y:
                    out[key] = y
                else:
                    out.pop(key, None)
        return out

    def entry(self, t: int, c: int) -> NcPolynomial:
        r = self.relations[c]
        terms = {w: a for (s, w), a in r.items() if s == t}
        deg = self.rel_degrees[c] - self.cover.shifts[t]
        return NcPolynomial(self.algebra.field, terms, deg)

    def max_degree_hint(self) -> int:
        return max(list(self.cover.shifts) + list(self.rel_degrees), default=0)

    def to_text(self) -> str:
        P = self.algebra.presentation
        lines = ["cover " + " ".join(str(s) for s in self.cover.shifts) + ";"]
        for c in range(len(self.relations)):
            entries = [P.format_poly(self.entry(t, c)) for t in range(self.cover.rank)]
            lines.append(f"rel r{c + 1}: " + ", ".join(entries) + ";")
        return "\n".join(lines) + "\n"

    def to_json(self):
        F = self.algebra.field
        return {
            "name": self.name,
            "kind": self.kind,
            "cover": list(self.cover.shifts),
            "relations": [
                [[t, list(w), F.encode(c)] for (t, w), c in sorted(r.items())]
                for r in self.relations
            ],
        }

    @classmethod
    def from_json(cls, gb: GroebnerBasis, data) -> "ModulePresentation":
        F = gb.field
        rels = tuple({(t, tuple(w)): F.decode(c) for t, w, c in r} for r in data["relations"])
        return cls(gb, GradedFreeModule(tuple(data["cover"])), rels, data.get("name", "M"),
                   data.get("kind", "file"))


def module_from_text(gb: GroebnerBasis, mt: ModuleText, name="M") -> ModulePresentation:
    rels = []
    for label, entries in mt.relations:
        flat: Flat = {}
        degs = set()
        for t, p in enumerate(entries):
            if p.is_zero():
                continue
            degs.add(p.degree + mt.cover[t])
            for w, c in p.terms.items():
                flat[(t, w)] = c
        if len(degs) > 1:
            raise ModuleError(f"relation {label} is inhomogeneous (degrees {sorted(degs)})")
        if not flat:
            raise ModuleError(f"relation {label} is zero")
        rels.append(flat)
    return ModulePresentation(gb, GradedFreeModule(tuple(mt.cover)), tuple(rels), name, "file")


def trivial_module(gb: GroebnerBasis) -> ModulePresentation:
    """k = A / m: one relation column per algebra generator."""
    F = gb.field
    rels = tuple({(0, (g,)): F.one} for g in range(len(gb.weights)))
    return ModulePresentation(gb, GradedFreeModule((0,)), rels, "k", "trivial")


def free_module(gb: GroebnerBasis, shifts: Sequence[int] = (0,), name=None) -> ModulePresentation:
    shifts = tuple(shifts)
    if name is None:
        name = "A" if shifts == (0,) else "+".join(f"A({-s})" for s in shifts)
    return ModulePresentation(gb, GradedFreeModule(shifts), (), name, "free")


def random_element(gb: GroebnerBasis, shifts: Sequence[int], degree: int, rng: random.Random,
                   density: float = 1.0) -> Flat:
    F = gb.field
    out: Flat = {}
    for t, s in enumerate(shifts):
        for w in gb.monomial_basis(degree - s):
            if density >= 1.0 or rng.random() < density:
                out[(t, w)] = F.random_element(rng)
    return out


def random_module(gb: GroebnerBasis, seed: int, num_gens: int = 1, gen_degrees: Sequence[int] = None,
                  num_rels: int = 1, rel_degree: int = 2, name=None) -> ModulePresentation:
    """Deterministic pseudo-random homogeneous presentation."""
    rng = random.Random(seed)
    shifts = tuple(gen_degrees) if gen_degrees is not None else (0,) * num_gens
    if len(shifts) != num_gens:
        raise ModuleError("gen_degrees must list one degree per generator")
    if rel_degree > gb.certified_degree:
        raise CertificationError(f"relation degree {rel_degree} beyond Gröbner window")
    rels = []
    for _ in range(num_rels):
        for _attempt in range(20):
            r = random_element(gb, shifts, rel_degree, rng)
            if r:
                rels.append(r)
                break
    name = name or f"rand[{seed}]"
    return ModulePresentation(gb, GradedFreeModule(shifts), tuple(rels), name, "random")


class GradedPieces:
    """Degreewise quotient structure M_j = C_j / N_j of a presented module."""

    def __init__(self, M: ModulePresentation, D: int):
        self.M = M
        self.gb = M.algebra
        self.D = D
        self._spaces: Dict[int, Tuple[Echelon, List[Tuple[int, Word]]]] = {}
        self.min_degree = min(M.cover.shifts) if M.cover.rank else 0
        self._top = "unknown"

    def space(self, j: int):
        if j in self._spaces:
            return self._spaces[j]
        gb, M = self.gb, self.M
        if j > self.D:
            top = self.top_degree()
            if top is None or top == "unknown":
                raise CertificationError(f"module degree {j} beyond window {self.D}")
        E = Echelon(gb.field)
        coords = M.cover.coords(gb, j) if j <= gb.certified_degree else []
        if coords:
            for r, rd in zip(M.relations, M.rel_degrees):
                if rd <= j:
                    for u in gb.monomial_basis(j - rd):
                        E.add(left_multiply(gb, u, r))
        basis = [c for c in coords if c not in E.pivots]
        self._spaces[j] = (E, basis)
        return self._spaces[j]

    def dim(self, j: int) -> int:
        if self.M.cover.rank == 0 or j < self.min_degree:
            return 0
        top = self._top
        if isinstance(top, int) and j > top:
            return 0
        if j > self.D:
            if self.top_degree() is None:
                raise CertificationError(f"module degree {j} beyond window {self.D}")
            return 0 if j > self._top else len(self.space(j)[1])
        return len(self.space(j)[1])

    def basis(self, j: int) -> List[Tuple[int, Word]]:
        if self.dim(j) == 0:
            return []
        return self.space(j)[1]

    def reduce(self, j: int, v: Flat) -> Flat:
        if self.dim(j) == 0:
            return {}
        return self.space(j)[0].reduce(v)

    def act(self, p: Dict[Word, object], j: int, v: Flat) -> Flat:
        """p * v for v in M_j, result reduced in M_{j + deg p}."""
        if not v or not p:
            return {}
        dp = self.gb.degree_of(next(iter(p)))
        prod = left_multiply_poly(self.gb, p, v)
        return self.reduce(j + dp, prod)

    def hilbert(self, lo: int, hi: int) -> Dict[int, int]:
        return {j: self.dim(j) for j in range(lo, hi + 1)}

    def top_degree(self):
        """Top degree if finite dimensionality is certified inside the window.

        Returns an int, None when not certified, or -1 - (huge) never; the
        zero module reports ``min_degree - 1``.
        """
        if self._top != "unknown":
            return self._top
        self._top = None
        M, gb = self.M, self.gb
        if M.cover.rank == 0:
            self._top = self.min_degree - 1
            return self._top
        g = max(gb.weights, default=1)
        start = max(M.cover.shifts) + 1
        for n in range(start, self.D - g + 2):
            if all(len(self.space(m)[1]) == 0 for m in range(n, n + g)):
                nonzero = [m for m in range(self.min_degree, n) if len(self.space(m)[1])]
                self._top = max(nonzero) if nonzero else self.min_degree - 1
                return self._top
        return None

    def is_zero(self) -> Optional[bool]:
        top = self.top_degree()
        if top is None:
            return False if any(self.dim(j) for j in range(self.min_degree, self.D + 1)) else None
        return top < self.min_degree


@dataclass
class Step:
    module: GradedFreeModule
    images: List[Flat]          # images of the generators in the previous module
    gen_bound: Optional[int]    # all generators have degree <= gen_bound (None: unknown)
    lead_degree: Optional[int] = None   # top minimal leading degree of the image of this step's map


@dataclass
class MinimalResolution:
    module: ModulePresentation
    steps: List[Step]
    hom_bound: int
    deg_bound: int
    terminated: bool
    length: Optional[int]
    slack: Optional[int]
    notes: List[str] = dc_field(default_factory=list)

    @property
    def algebra(self) -> GroebnerBasis:
        return self.module.algebra

    def free(self, i: int) -> GradedFreeModule:
        if i < len(self.steps):
            return self.steps[i].module
        return GradedFreeModule(())

    def differential(self, i: int) -> List[Flat]:
        """Images of the generators of F_i in F_{i-1} (i >= 1)."""
        return self.steps[i].images if i < len(self.steps) else []

    def step_complete(self, i: int) -> bool:
        """All generators of F_i are known (none can hide above the window)."""
        if self.terminated and i > self.length:
            return True
        if i >= len(self.steps):
            return False
        b = self.steps[i].gen_bound
        return b is not None and b <= self.deg_bound

    def entry(self, i: int, t: int, c: int) -> NcPolynomial:
        img = self.steps[i].images[c]
        terms = {w: a for (s, w), a in img.items() if s == t}
        deg = self.free(i).shifts[c] - self.free(i - 1).shifts[t]
        return NcPolynomial(self.algebra.field, terms, deg)

    def check_complex(self) -> bool:
        """d_{i} o d_{i+1} = 0 on generators (hence in every degree)."""
        gb = self.algebra
        F = gb.field
        for i in range(2, len(self.steps)):
            prev = self.steps[i - 1].images
            for img in self.steps[i].images:
                out: Flat = {}
                for (c, w), a in img.items():
                    F.axpy(out, a, left_multiply(gb, w, prev[c]))
                if out:
                    return False
        if len(self.steps) > 1:
            pieces = GradedPieces(self.module, self.deg_bound)
            aug = self.steps[0].images
            for img in self.steps[1].images:
                out = {}
                for (c, w), a in img.items():
                    F.axpy(out, a, left_multiply(gb, w, aug[c]))
                d = flat_degree(gb, self.module.cover.shifts, out) if out else None
                if out and pieces.reduce(d, out):
                    return False
        return True

    def is_minimal(self) -> bool:
        """Every differential entry lies in the augmentation ideal."""
        for i in range(1, len(self.steps)):
            for img in self.steps[i].images:
                if any(len(w) == 0 for (_, w) in img):
                    return False
        return True

    def to_json(self):
        F = self.algebra.field
        return {
            "module": self.module.to_json(),
            "hom_bound": self.hom_bound,
            "deg_bound": self.deg_bound,
            "terminated": self.terminated,
            "length": self.length,
            "slack": self.slack,
            "steps": [
                {
                    "shifts": list(s.module.shifts),
                    "gen_bound": s.gen_bound,
                    "lead_degree": s.lead_degree,
                    "images": [[[t, list(w), F.encode(c)] for (t, w), c in sorted(img.items())]
                               for img in s.images],
                }
                for s in self.steps
            ],
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, gb: GroebnerBasis, data) -> "MinimalResolution":
        F = gb.field
        M = ModulePresentation.from_json(gb, data["module"])
        steps = [
            Step(GradedFreeModule(tuple(s["shifts"])),
                 [{(t, tuple(w)): F.decode(c) for t, w, c in img} for img in s["images"]],
                 s["gen_bound"], s.get("lead_degree"))
            for s in data["steps"]
        ]
        return cls(M, steps, data["hom_bound"], data["deg_bound"], data["terminated"],
                   data["length"], data["slack"], list(data.get("notes", [])))


def algebra_slack(gb: GroebnerBasis) -> Optional[int]:
    """Largest degree of a left factor that can complete an algebra leading word
    across the boundary with a normal word; None if the basis is incomplete."""
    if not gb.complete:
        return None
    if not gb.leading:
        return 0
    return gb.max_leading_degree() - min(gb.weights)


def _module_order_index(gb: GroebnerBasis, coords: List[Tuple[int, Word]]):
    """Column indices with 0 = largest monomial in the left-compatible order
    (word degree, word, generator)."""
    order = sorted(coords, key=lambda tw: (gb.degree_of(tw[1]), tw[1], tw[0]), reverse=True)
    return {c: i for i, c in enumerate(order)}, order


def _image_and_kernel(F, images: List[Dict[int, object]]):
    """Pivot columns of the image span and a kernel basis (indexed by k)."""
    piv: Dict[int, Tuple[dict, dict]] = {}
    kernel = []
    one = F.one
    for k, img in enumerate(images):
        v = dict(img)
        comb = {k: one}
        for c in [c for c in v if c in piv]:
            a = v.get(c)
            if a:
                row, rc = piv[c]
                na = F.neg(a)
                F.axpy(v, na, row)
                F.axpy(comb, na, rc)
        if not v:
            kernel.append(comb)
            continue
        c0 = min(v)
        inv = F.inv(v[c0])
        v = F.scale(v, inv)
        comb = F.scale(comb, inv)
        for row, rc in piv.values():
            a = row.get(c0)
            if a:
                na = F.neg(a)
                F.axpy(row, na, v)
                F.axpy(rc, na, comb)
        piv[c0] = (v, comb)
    return set(piv), kernel


def _minimal_leads(gb: GroebnerBasis, leads: set, new: List[Tuple[int, Word]]) -> List[Tuple[int, Word]]:
    out = []
    for t, w in new:
        if not any((t, w[k:]) in leads for k in range(1, len(w))):
            out.append((t, w))
    return out


def _syzygy_step(gb: GroebnerBasis, source: GradedFreeModule, images: List[Flat],
                 target: GradedFreeModule, D: int, quotient: Optional[GradedPieces] = None,
                 track_leads: bool = True):
    """Minimal generators of the kernel of source -> target (mod quotient).

    Returns (new generator list [(degree, flat element of source)], G) where
    G is the top degree of a minimal leading monomial of the image (None if
    the image is zero in the window).
    """
    F = gb.field
    chosen: List[Tuple[int, Flat]] = []
    leads: set = set()
    G = None
    if source.rank == 0:
        return chosen, G
    lo = min(source.shifts)
    for j in range(lo, D + 1):
        src = source.coords(gb, j)
        if not src:
            continue
        tgt = target.coords(gb, j)
        col_index, order = _module_order_index(gb, tgt)
        imgs = []
        for (c, w) in src:
            v = left_multiply(gb, w, images[c])
            if quotient is not None:
                v = quotient.reduce(j, v)
            imgs.append({col_index[k]: a for k, a in v.items()})
        pivots, kernel = _image_and_kernel(F, imgs)
        if track_leads and quotient is None:
            new = [order[p] for p in sorted(pivots)]
            leads.update(new)
            mins = _minimal_leads(gb, leads, new)
            if mins:
                G = j
        if not kernel:
            continue
        src_index = {c: i for i, c in enumerate(src)}
        S = Echelon(F)
        for d, g in chosen:
            if d >= j:
                continue
            for u in gb.monomial_basis(j - d):
                S.add({src_index[k]: a for k, a in left_multiply(gb, u, g).items()})
        if len(kernel) <= S.rank:
            continue
        R = Echelon(F)
        for kv in kernel:
            r = S.reduce(kv)
            if r:
                R.add(r)
        for row in R.rows():
            chosen.append((j, {src[i]: a for i, a in row.items()}))
    return chosen, G


def _cover_step(gb: GroebnerBasis, M: ModulePresentation, pieces: GradedPieces, D: int):
    """Minimal generators of M, as elements of the given cover."""
    F = gb.field
    cover = M.cover
    chosen: List[Tuple[int, Flat]] = []
    if cover.rank == 0:
        return chosen
    for j in range(min(cover.shifts), min(D, max(cover.shifts)) + 1):
        coords = cover.coords(gb, j)
        if not coords:
            continue
        N, _ = pieces.space(j)
        S = Echelon(F)
        for row in N.rows():
            S.add(row)
        for d, g in chosen:
            for u in gb.monomial_basis(j - d):
                S.add(left_multiply(gb, u, g))
        if S.rank == len(coords):
            continue
        R = Echelon(F)
        for c in coords:
            r = S.reduce({c: F.one})
            if r:
                R.add(r)
        for row in R.rows():
            chosen.append((j, row))
    return chosen


def reversed_algebra(gb: GroebnerBasis, D: int) -> Optional[GroebnerBasis]:
    """The same algebra with its generator order reversed, truncated at D (memoized)."""
    memo = gb.__dict__.setdefault("_reversed", {})
    if D not in memo:
        P = gb.presentation
        n = len(P.generators)
        rels = tuple(NcPolynomial(P.field, {tuple(n - 1 - g for g in w): c for w, c in r.terms.items()},
                                  r.degree) for r in P.relations)
        Q = Presentation(P.field, tuple(reversed(P.generators)), rels, P.ordering)
        G = groebner_truncated(Q, D)
        memo[D] = G if G.certified_degree >= D else None
    return memo[D]


def _reversed_module(M: ModulePresentation, gb2: GroebnerBasis) -> ModulePresentation:
    n = len(M.algebra.presentation.generators)
    rels = tuple({(t, tuple(n - 1 - g for g in w)): c for (t, w), c in r.items()} for r in M.relations)
    return ModulePresentation(gb2, M.cover, rels, M.name, M.kind)


def minimal_resolution(M: ModulePresentation, n_max: int, D: int,
                       gldim: Optional[int] = None, reorder: bool = True) -> MinimalResolution:
    """Minimal graded free resolution F_0 <- F_1 <- ... <- F_{n_max}, exact in degrees <= D.

    ``gldim``: a certified global dimension of the algebra, if known; steps
    beyond it vanish, which can certify termination when the degree bounds
    alone cannot.

    ``reorder``: when termination cannot be certified, try again with the
    generator order reversed.  Leading words of left ideals depend on the
    order (over k[x,y] with x < y the ideal A*x has leading words x*y^b for
    all b, while A*y is finitely generated on leading words), and a
    certificate found for either order is a certificate for the module.
    """
    R = _resolve(M, n_max, D, gldim)
    gb = M.algebra
    if R.terminated or not reorder or len(gb.presentation.generators) < 2 or R.slack is None:
        return R
    gb2 = reversed_algebra(gb, D)
    if gb2 is None:
        return R
    R2 = _resolve(_reversed_module(M, gb2), n_max, D, gldim)
    if not R2.terminated:
        return R
    if betti_table(R2).nonzero() != betti_table(R).nonzero():
        raise NcregError("Betti numbers depend on the generator order; this is a bug")
    for st, st2 in zip(R.steps, R2.steps):
        st.gen_bound = st2.gen_bound
    R.terminated, R.length = True, R2.length
    R.notes.append("termination certified with the generator order reversed")
    return R


def _resolve(M: ModulePresentation, n_max: int, D: int, gldim: Optional[int]) -> MinimalResolution:
    gb = M.algebra
    if D > gb.certified_degree:
        raise CertificationError(
            f"resolution window D={D} exceeds Gröbner certification {gb.certified_degree}")
    slack = algebra_slack(gb)
    pieces = GradedPieces(M, D)
    notes = []

    gens0 = _cover_step(gb, M, pieces, D)
    F0 = GradedFreeModule(tuple(d for d, _ in gens0))
    cover_minimal = len(gens0) == M.cover.rank and all(
        g == {(t, ()): gb.field.one} for t, (_, g) in enumerate(gens0))
    b0 = max(M.cover.shifts) if M.cover.rank else 0
    steps = [Step(F0, [g for _, g in gens0], b0)]

    if n_max >= 1:
        gens1, _ = _syzygy_step(gb, F0, steps[0].images, M.cover, D, quotient=pieces)
        if M.relations:
            b1 = max(M.rel_degrees)
            if not cover_minimal:
                b1 = max(b1, b0)
        else:
            b1 = b0  # vacuous when the cover is already minimal
        steps.append(Step(GradedFreeModule(tuple(d for d, _ in gens1)),
                          [g for _, g in gens1], b1))
    for i in range(2, n_max + 1):
        prev = steps[i - 1]
        if prev.module.rank == 0:
            steps.append(Step(GradedFreeModule(()), [], prev.gen_bound))
            continue
        gens, G = _syzygy_step(gb, prev.module, prev.images, steps[i - 2].module, D)
        prev.lead_degree = G
        bound = None
        if slack is not None and prev.gen_bound is not None and prev.gen_bound <= D:
            top = prev.module.max_shift()
            if G is None:
                bound = top
            elif G + slack <= D:
                bound = max(top, G + slack)
        steps.append(Step(GradedFreeModule(tuple(d for d, _ in gens)),
                          [g for _, g in gens], bound))

    def known(upto):
        return all(st.gen_bound is not None and st.gen_bound <= D for st in steps[:upto + 1])

    terminated, length = False, None
    for i, s in enumerate(steps):
        if s.module.rank == 0 and known(i):
            terminated, length = True, i - 1
            break
    if not terminated and gldim is not None and gldim < len(steps) and known(gldim):
        terminated = True
        length = max((i for i in range(gldim + 1) if steps[i].module.rank), default=-1)
        for s in steps[gldim + 1:]:
            s.gen_bound = steps[gldim].gen_bound
        notes.append("steps above the global dimension of the algebra vanish")
    return MinimalResolution(M, steps, n_max, D, terminated, length, slack, notes)


@dataclass
class BettiTable:
    values: Dict[Tuple[int, int], int]
    hom_bound: int
    deg_bound: int
    terminated: bool
    complete_steps: Tuple[bool, ...] = ()

    def __getitem__(self, ij):
        return self.values.get(ij, 0)

    def nonzero(self) -> Dict[Tuple[int, int], int]:
        return {k: v for k, v in sorted(self.values.items()) if v}

    def to_json(self):
        return {
            "betti": [[i, j, b] for (i, j), b in sorted(self.values.items()) if b],
            "certification": {
                "n_max": self.hom_bound,
                "D": self.deg_bound,
                "terminated": self.terminated,
                "complete_steps": list(self.complete_steps),
            },
        }


def betti_table(R: MinimalResolution) -> BettiTable:
    vals: Dict[Tuple[int, int], int] = {}
    for i, s in enumerate(R.steps):
        if i > R.hom_bound:
            break
        for sh in s.module.shifts:
            vals[(i, sh)] = vals.get((i, sh), 0) + 1
    complete = tuple(R.step_complete(i) for i in range(min(len(R.steps), R.hom_bound + 1)))
    return BettiTable(vals, R.hom_bound, R.deg_bound, R.terminated, complete)


@dataclass(frozen=True)
class ProjectiveDimension:
    value: int
    exact: bool

    def __str__(self):
        return str(self.value) if self.exact else f">={self.value}"


def projective_dimension(R: MinimalResolution) -> ProjectiveDimension:
    if R.terminated:
        return ProjectiveDimension(R.length, True)
    last = max((i for i, s in enumerate(R.steps) if s.module.rank), default=-1)
    return ProjectiveDimension(max(last, 0), False)
