"""Truncated Gröbner bases for homogeneous two-sided ideals of free algebras.

Completion runs degree by degree.  At degree d the candidates are the
relations of degree d and the S-polynomials of all overlaps of degree d
between elements of lower degree; they are reduced by the lower part of the
basis and then brought to reduced echelon form among themselves.  Because
everything is homogeneous, the basis elements of degree <= D are final once
degree D has been processed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .core import GradedDims, NcPolynomial, NcregError, Presentation, Word, word_degree
from .field import Field
from .linalg import Echelon


class CertificationError(NcregError):
    """A request reaches beyond the degree window that has been certified."""


@dataclass(frozen=True)
class Budget:
    max_elements: Optional[int] = None
    max_degree: Optional[int] = None


def _overlaps(a: Word, b: Word):
    """Proper overlaps: lengths k with a's suffix equal to b's prefix."""
    n = min(len(a), len(b))
    for k in range(1, n):
        if a[-k:] == b[:k]:
            yield k


class GroebnerBasis:
    """Reduced Gröbner basis, exact up to ``certified_degree``.

    ``elements`` are monic dict polynomials sorted by leading word (deglex).
    """

    def __init__(self, presentation: Presentation, elements: List[Dict[Word, object]],
                 certified_degree: int, complete: bool, exact: bool = True):
        self.presentation = presentation
        self.field: Field = presentation.field
        self.weights = presentation.weights
        w = self.weights
        self.elements = sorted(elements, key=lambda p: _lead_key(p, w))
        self.certified_degree = certified_degree
        self.complete = complete
        self.exact = exact
        self._index()

    def _index(self):
        self.leading = {}
        for p in self.elements:
            lw = _lead(p, self.weights)
            self.leading[lw] = p
        self._lw_lengths = sorted({len(lw) for lw in self.leading})
        self._nf_cache: Dict[Word, Dict[Word, object]] = {}
        self._basis_cache: Dict[int, List[Word]] = {0: [()]}

    # --- queries -----------------------------------------------------------

    def degree_of(self, word: Word) -> int:
        return word_degree(word, self.weights)

    def max_leading_degree(self) -> int:
        return max((self.degree_of(lw) for lw in self.leading), default=0)

    def _check(self, degree: int):
        if degree > self.certified_degree:
            raise CertificationError(
                f"degree {degree} exceeds certified Gröbner degree {self.certified_degree}")

    def _find_factor(self, word: Word):
        lead = self.leading
        n = len(word)
        for i in range(n):
            for L in self._lw_lengths:
                if i + L > n:
                    break
                f = word[i:i + L]
                if f in lead:
                    return i, f
        return None

    def is_normal(self, word: Word) -> bool:
        return self._find_factor(word) is None

    def nf_word(self, word: Word) -> Dict[Word, object]:
        """Normal form of a single word, as a dict (cached; do not mutate)."""
        cache = self._nf_cache
        got = cache.get(word)
        if got is not None:
            return got
        hit = self._find_factor(word)
        if hit is None:
            res = {word: self.field.one}
        else:
            i, lw = hit
            F = self.field
            g = self.leading[lw]
            pre, post = word[:i], word[i + len(lw):]
            res = {}
            for u, c in g.items():
                if u == lw:
                    continue
                F.axpy(res, F.neg(c), self.nf_word(pre + u + post))
        cache[word] = res
        return res

    def nf_terms(self, terms: Dict[Word, object]) -> Dict[Word, object]:
        F = self.field
        out: Dict[Word, object] = {}
        for w, c in terms.items():
            F.axpy(out, c, self.nf_word(w))
        return out

    def normal_form(self, p: NcPolynomial) -> NcPolynomial:
        if p.is_zero():
            return p
        self._check(p.degree)
        return NcPolynomial(self.field, self.nf_terms(p.terms), p.degree)

    def multiply(self, a: Dict[Word, object], b: Dict[Word, object]) -> Dict[Word, object]:
        """Product of two normal-form elements of the quotient algebra."""
        F = self.field
        out: Dict[Word, object] = {}
        for u, x in a.items():
            for v, y in b.items():
                F.axpy(out, F.mul(x, y), self.nf_word(u + v))
        return out

    def monomial_basis(self, d: int) -> List[Word]:
        """Normal words of degree d in deglex order."""
        if d < 0:
            return []
        self._check(d)
        cache = self._basis_cache
        if d in cache:
            return cache[d]
        lead = self.leading
        lens = self._lw_lengths
        out = []
        for g, wt in enumerate(self.weights):
            if wt > d:
                continue
            for w in self.monomial_basis(d - wt):
                nw = w + (g,)
                if not any(L <= len(nw) and nw[-L:] in lead for L in lens):
                    out.append(nw)
        out.sort()
        cache[d] = out
        return out

    def hilbert_function(self, D: int) -> GradedDims:
        self._check(D)
        return GradedDims({i: len(self.monomial_basis(i)) for i in range(D + 1)}, (0, D))

    def top_degree(self) -> Optional[int]:
        """Top degree of A if finite-dimensionality is certified, else None.

        A vanishes from degree n on once A_n..A_{n+g-1} vanish, g the largest
        generator degree.
        """
        g = max(self.weights, default=1)
        D = self.certified_degree
        for n in range(1, D - g + 2):
            if all(not self.monomial_basis(m) for m in range(n, n + g)):
                return max(m for m in range(n) if self.monomial_basis(m))
        if not self.weights:
            return 0
        return None

    def polynomials(self) -> List[NcPolynomial]:
        return [NcPolynomial(self.field, p, self.degree_of(_lead(p, self.weights)))
                for p in self.elements]

    # --- serialization -----------------------------------------------------

    def to_json(self):
        F = self.field
        return {
            "certified_degree": self.certified_degree,
            "complete": self.complete,
            "exact": self.exact,
            "elements": [
                [[list(w), F.encode(c)] for w, c in sorted(p.items(), reverse=True)]
                for p in self.elements
            ],
        }

    @classmethod
    def from_json(cls, P: Presentation, data) -> "GroebnerBasis":
        F = P.field
        elements = [{tuple(w): F.decode(c) for w, c in p} for p in data["elements"]]
        return cls(P, elements, data["certified_degree"], data["complete"], data.get("exact", True))


def _lead(p: Dict[Word, object], weights) -> Word:
    return max(p)


def _lead_key(p, weights):
    lw = max(p)
    return (word_degree(lw, weights), lw)


def groebner_truncated(P: Presentation, D: int, budget: Budget = Budget()) -> GroebnerBasis:
    """Gröbner basis of the relation ideal containing every element of degree <= D."""
    if D < P.max_relation_degree():
        raise ValueError(f"degree bound {D} below maximal relation degree {P.max_relation_degree()}")
    F = P.field
    weights = P.weights
    wdeg = lambda w: word_degree(w, weights)  # noqa: E731

    rels_by_deg: Dict[int, List[Dict[Word, object]]] = {}
    for r in P.relations:
        rels_by_deg.setdefault(r.degree, []).append(dict(r.terms))

    G = GroebnerBasis(P, [], D, False)
    G.certified_degree = 0
    # overlap word -> list of (g_lead, h_lead, k); bucketed by degree
    obstructions: Dict[int, set] = {}
    beyond = False
    exact = True
    max_deg = D if budget.max_degree is None else min(D, budget.max_degree)
    certified = 0

    def register(new_leads):
        nonlocal beyond
        leads = list(G.leading)
        for a in new_leads:
            for b in leads:
                pairs = [(a, b)] if a == b else [(a, b), (b, a)]
                for x, y in pairs:
                    for k in _overlaps(x, y):
                        w = x + y[k:]
                        dw = wdeg(w)
                        if dw > D:
                            beyond = True
                        else:
                            obstructions.setdefault(dw, set()).add((w, x, y, k))

    for d in range(1, max_deg + 1):
        cands = list(rels_by_deg.get(d, []))
        for w, x, y, k in sorted(obstructions.pop(d, ())):
            gx, gy = G.leading[x], G.leading[y]
            u, v = x[:len(x) - k], y[k:]
            s: Dict[Word, object] = {}
            for m, c in gx.items():
                F.axpy(s, c, {m + v: F.one})
            for m, c in gy.items():
                F.axpy(s, F.neg(c), {u + m: F.one})
            cands.append(s)
        if cands:
            E = Echelon(F)
            for c in cands:
                red = G.nf_terms(c)
                if red:
                    # pivot = largest word: order columns by negated deglex key
                    E.add({_neg_key(m): a for m, a in red.items()})
            new = []
            for row in E.rows():
                new.append({_unneg(kk): a for kk, a in row.items()})
            if new:
                if budget.max_elements is not None and len(G.elements) + len(new) > budget.max_elements:
                    exact = False
                    break
                G.elements = sorted(G.elements + new, key=lambda p: _lead_key(p, weights))
                old_cache = {w: r for w, r in G._nf_cache.items() if wdeg(w) < d}
                basis_cache = {e: b for e, b in G._basis_cache.items() if e < d}
                G._index()
                G._nf_cache = old_cache
                G._basis_cache = basis_cache
                register([_lead(p, weights) for p in new])
        certified = d
    else:
        certified = max_deg
    if max_deg < D:
        exact = False
    pending = beyond or any(obstructions.values())
    for r_deg in rels_by_deg:
        if r_deg > certified:
            pending = True
    result = GroebnerBasis(P, G.elements, certified, complete=(not pending and exact), exact=exact)
    return result


class _NegWord:
    """Sort key inverting deglex order so the leading word becomes the pivot."""

    __slots__ = ("w",)

    def __init__(self, w):
        self.w = w

    def __lt__(self, other):
        return self.w > other.w

    def __gt__(self, other):
        return self.w < other.w

    def __eq__(self, other):
        return self.w == other.w

    def __hash__(self):
        return hash(self.w)


def _neg_key(w):
    return _NegWord(w)


def _unneg(k):
    return k.w
