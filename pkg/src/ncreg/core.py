"""Free-algebra words and polynomials, algebra presentations, graded dimensions.

A word is a tuple of generator indices; the empty tuple is the unit.  Words
are ordered degree-lexicographically with generator precedence equal to
declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .field import Field

Word = Tuple[int, ...]

LESS, EQUAL, GREATER = -1, 0, 1


class NcregError(Exception):
    """Base class for user-facing errors."""


class PresentationError(NcregError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise PresentationError(f"generator {self.name} has degree {self.degree} < 1")


def word_degree(word: Word, weights: Sequence[int]) -> int:
    return sum(weights[g] for g in word)


def word_key(word: Word, weights: Sequence[int]):
    return (word_degree(word, weights), word)


def word_compare(a: Word, b: Word, weights: Sequence[int] = None) -> int:
    """Deglex comparison; ``weights`` defaults to all generators in degree 1."""
    if weights is None:
        da, db = len(a), len(b)
    else:
        da, db = word_degree(a, weights), word_degree(b, weights)
    if da != db:
        return LESS if da < db else GREATER
    if a == b:
        return EQUAL
    return LESS if a < b else GREATER


class NcPolynomial:
    """Homogeneous element of the free algebra: a map word -> nonzero coefficient."""

    __slots__ = ("field", "terms", "degree")

    def __init__(self, field: Field, terms: Dict[Word, object], degree: Optional[int]):
        self.field = field
        self.terms = {w: c for w, c in terms.items() if c}
        self.degree = degree if self.terms else None

    @classmethod
    def from_terms(cls, field: Field, terms, weights: Sequence[int]) -> "NcPolynomial":
        acc: Dict[Word, object] = {}
        for w, c in terms:
            c = field(c)
            w = tuple(w)
            acc[w] = field.add(acc.get(w, field.zero), c)
        acc = {w: c for w, c in acc.items() if c}
        degs = {word_degree(w, weights) for w in acc}
        if len(degs) > 1:
            raise PresentationError(f"inhomogeneous polynomial (degrees {sorted(degs)})")
        return cls(field, acc, degs.pop() if degs else None)

    @classmethod
    def one(cls, field: Field) -> "NcPolynomial":
        return cls(field, {(): field.one}, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def words(self):
        """Words in descending deglex order (degree is common)."""
        return sorted(self.terms, reverse=True)

    def leading_word(self) -> Word:
        return max(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"NcPolynomial({self.terms!r})"

    def __add__(self, other: "NcPolynomial") -> "NcPolynomial":
        if not self.is_zero() and not other.is_zero() and self.degree != other.degree:
            raise PresentationError("sum of polynomials of different degrees")
        acc = dict(self.terms)
        self.field.axpy(acc, self.field.one, other.terms)
        return NcPolynomial(self.field, acc, self.degree if self.terms else other.degree)

    def __neg__(self):
        return NcPolynomial(self.field, self.field.scale(self.terms, self.field.neg(self.field.one)), self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "NcPolynomial":
        return NcPolynomial(self.field, self.field.scale(self.terms, self.field(c)), self.degree)

    def __mul__(self, other: "NcPolynomial") -> "NcPolynomial":
        return poly_multiply(self, other)


def poly_multiply(p: NcPolynomial, q: NcPolynomial) -> NcPolynomial:
    """Concatenation product in the free algebra."""
    if p.field != q.field:
        raise PresentationError("polynomials over different fields")
    F = p.field
    acc: Dict[Word, object] = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            w = u + v
            c = F.add(acc.get(w, F.zero), F.mul(a, b))
            if c:
                acc[w] = c
            else:
                acc.pop(w, None)
    deg = None if p.degree is None or q.degree is None else p.degree + q.degree
    return NcPolynomial(F, acc, deg)


@dataclass(frozen=True)
class Presentation:
    """Connected graded algebra k<generators>/(relations)."""

    field: Field
    generators: Tuple[Generator, ...]
    relations: Tuple[NcPolynomial, ...]
    ordering: str = "deglex"

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise PresentationError(f"duplicate generator name {dup[0]}")
        if self.ordering != "deglex":
            raise PresentationError(f"unsupported monomial order {self.ordering}")
        for r in self.relations:
            if r.is_zero():
                raise PresentationError("zero relation")
            if r.field != self.field:
                raise PresentationError("relation over a different field")
            degs = {word_degree(w, self.weights) for w in r.terms}
            if len(degs) != 1:
                raise PresentationError("inhomogeneous relation")
            if r.degree < 2:
                raise PresentationError(f"relation of degree {r.degree} < 2")
            if any(len(w) < 2 for w in r.terms):
                raise PresentationError("relation has a linear part")

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name}") from None

    def word_degree(self, word: Word) -> int:
        return word_degree(word, self.weights)

    def max_relation_degree(self) -> int:
        return max((r.degree for r in self.relations), default=0)

    def generated_in_degree_one(self) -> bool:
        return all(g.degree == 1 for g in self.generators)

    def poly(self, terms) -> NcPolynomial:
        return NcPolynomial.from_terms(self.field, terms, self.weights)

    def opposite(self) -> "Presentation":
        """Presentation of the opposite algebra (all words reversed)."""
        rels = tuple(
            NcPolynomial(self.field, {w[::-1]: c for w, c in r.terms.items()}, r.degree)
            for r in self.relations
        )
        return Presentation(self.field, self.generators, rels, self.ordering)

    def format_word(self, word: Word) -> str:
        return format_word(word, self.names)

    def format_poly(self, p) -> str:
        terms = p.terms if isinstance(p, NcPolynomial) else p
        return format_poly(terms, self.names, self.field)


def format_word(word: Word, names: Sequence[str]) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        n = j - i
        parts.append(names[word[i]] + (f"^{n}" if n > 1 else ""))
        i = j
    return "*".join(parts)


def format_poly(terms: Dict[Word, object], names: Sequence[str], F: Field) -> str:
    if not terms:
        return "0"
    out = []
    for w in sorted(terms, reverse=True):
        c = F.fmt(terms[w])
        neg = c.startswith("-")
        mag = c[1:] if neg else c
        body = format_word(w, names)
        if mag != "1":
            body = mag + "*" + body if w else mag
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


@dataclass(frozen=True)
class GradedDims:
    """Graded dimensions known exactly on the window [lo, hi]; outside it unknown."""

    dims: Dict[int, int] = dc_field(default_factory=dict)
    window: Optional[Tuple[int, int]] = None

    def __getitem__(self, degree: int) -> int:
        if self.window is not None and not (self.window[0] <= degree <= self.window[1]):
            raise KeyError(f"degree {degree} outside certified window {self.window}")
        return self.dims.get(degree, 0)

    def as_list(self):
        lo, hi = self.window
        return [self.dims.get(d, 0) for d in range(lo, hi + 1)]

    def nonzero(self) -> Dict[int, int]:
        return {d: n for d, n in sorted(self.dims.items()) if n}


def matlis_dual_dims(d: GradedDims) -> GradedDims:
    dims = {-j: n for j, n in d.dims.items()}
    window = None if d.window is None else (-d.window[1], -d.window[0])
    return GradedDims(dims, window)


def iter_words(weights: Sequence[int], degree: int) -> Iterable[Word]:
    """All words of the given weighted degree, in deglex order."""
    if degree == 0:
        yield ()
        return
    for g, wt in enumerate(weights):
        if wt <= degree:
            for rest in iter_words(weights, degree - wt):
                yield (g,) + rest
