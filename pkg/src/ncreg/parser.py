"""Reading and writing the text formats for algebras and modules.

Algebra files::

    # comment
    field F 32003;
    gens x:1 y:1;
    rels x*y - y*x;

Module files::

    algebra poly2.alg;      # optional, resolved relative to the module file
    cover 0 0;
    rel r1: x, y;
    rel r2: y^2, 0;
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import Generator, NcPolynomial, NcregError, Presentation, PresentationError
from .field import Field, FieldError, PrimeField, Rationals


class ParseError(NcregError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>[0-9]+)|(?P<op>[;:,*^+\-/])"
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    return tokens


class _Stream:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else Token("eof", "", 1, 1)
            raise ParseError("unexpected end of input", last.line, last.col + len(last.text))
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def at(self, *texts) -> bool:
        tok = self.peek()
        return tok is not None and tok.text in texts

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek() or (self.tokens[-1] if self.tokens else Token("eof", "", 1, 1))
        return ParseError(message, tok.line, tok.col)


def _parse_coef(s: _Stream) -> Fraction:
    num = int(s.next().text)
    if s.at("/"):
        s.next()
        tok = s.next()
        if tok.kind != "int":
            raise s.error("expected integer denominator", tok)
        den = int(tok.text)
        if den == 0:
            raise s.error("zero denominator", tok)
        return Fraction(num, den)
    return Fraction(num)


def _parse_term(s: _Stream, names: Sequence[str]):
    coef = Fraction(1)
    tok = s.peek()
    if tok is None:
        raise s.error("expected a term")
    if tok.kind == "int":
        coef = _parse_coef(s)
        if not s.at("*"):
            return coef, ()
        s.next()
    word: List[int] = []
    while True:
        tok = s.next()
        if tok.kind != "name":
            raise s.error(f"expected generator name, found {tok.text!r}", tok)
        if tok.text not in names:
            raise ParseError(f"unknown generator {tok.text}", tok.line, tok.col)
        g = names.index(tok.text)
        exp = 1
        if s.at("^"):
            s.next()
            etok = s.next()
            if etok.kind != "int" or int(etok.text) < 1:
                raise s.error("expected positive exponent", etok)
            exp = int(etok.text)
        word.extend([g] * exp)
        if not s.at("*"):
            break
        s.next()
    return coef, tuple(word)


def _parse_poly(s: _Stream, names: Sequence[str]):
    """Returns the list of (word, coefficient) terms and the first token."""
    first = s.peek()
    sign = 1
    if s.at("-", "+"):
        sign = -1 if s.next().text == "-" else 1
    terms = []
    c, w = _parse_term(s, names)
    terms.append((w, sign * c))
    while s.at("+", "-"):
        sign = -1 if s.next().text == "-" else 1
        c, w = _parse_term(s, names)
        terms.append((w, sign * c))
    return [(w, c) for w, c in terms if c], first


def _to_poly(field: Field, terms, weights, tok: Token, *, what="polynomial") -> NcPolynomial:
    try:
        return NcPolynomial.from_terms(field, terms, weights)
    except (PresentationError, FieldError) as e:
        raise ParseError(f"{what}: {e}", tok.line, tok.col) from None


def parse_polynomial(text: str, P: Presentation) -> NcPolynomial:
    """A homogeneous polynomial in the generators of P."""
    s = _Stream(tokenize(text))
    if s.peek() is None:
        raise ParseError("empty polynomial")
    terms, first = _parse_poly(s, list(P.names))
    if s.peek() is not None:
        raise s.error(f"unexpected {s.peek().text!r} after polynomial", s.peek())
    return _to_poly(P.field, terms, P.weights, first)


def parse_presentation(text: str) -> Presentation:
    s = _Stream(tokenize(text))
    field: Field = Rationals()
    gens: List[Generator] = []
    raw_rels = []
    seen = set()
    while s.peek() is not None:
        tok = s.next()
        if tok.text == ";":
            continue
        if tok.kind != "name" or tok.text not in ("field", "gens", "rels", "order"):
            raise s.error(f"expected 'field', 'gens', 'rels' or 'order', found {tok.text!r}", tok)
        if tok.text in seen:
            raise s.error(f"repeated {tok.text!r} statement", tok)
        seen.add(tok.text)
        if tok.text == "field":
            ftok = s.next()
            if ftok.text == "Q":
                field = Rationals()
            elif ftok.text == "F":
                ptok = s.next()
                if ptok.kind != "int":
                    raise s.error("expected characteristic after 'F'", ptok)
                try:
                    field = PrimeField(int(ptok.text))
                except FieldError as e:
                    raise ParseError(str(e), ptok.line, ptok.col) from None
            else:
                raise s.error("field must be 'Q' or 'F <prime>'", ftok)
            s.expect(";")
        elif tok.text == "order":
            otok = s.next()
            if otok.text != "deglex":
                raise s.error(f"unsupported monomial order {otok.text!r}", otok)
            s.expect(";")
        elif tok.text == "gens":
            if "rels" in seen:
                raise s.error("'gens' must come before 'rels'", tok)
            while not s.at(";"):
                ntok = s.next()
                if ntok.kind != "name":
                    raise s.error(f"expected generator name, found {ntok.text!r}", ntok)
                s.expect(":")
                dtok = s.next()
                if dtok.kind != "int":
                    raise s.error("expected generator degree", dtok)
                if any(g.name == ntok.text for g in gens):
                    raise ParseError(f"duplicate generator name {ntok.text}", ntok.line, ntok.col)
                if int(dtok.text) < 1:
                    raise ParseError(f"generator {ntok.text} has degree < 1", dtok.line, dtok.col)
                gens.append(Generator(ntok.text, int(dtok.text)))
            s.expect(";")
        else:
            names = [g.name for g in gens]
            # relations run to end of input, separated by ';'
            while s.peek() is not None:
                if s.at(";"):
                    s.next()
                    continue
                if s.peek().kind == "name" and s.peek().text in ("field", "gens", "order", "rels") \
                        and s.peek().text not in names:
                    break
                terms, first = _parse_poly(s, names)
                raw_rels.append((terms, first))
                if s.peek() is not None:
                    s.expect(";")
    weights = [g.degree for g in gens]
    rels = []
    for terms, first in raw_rels:
        p = _to_poly(field, terms, weights, first, what="relation")
        if p.is_zero():
            continue
        if p.degree < 2:
            raise ParseError(f"relation of degree {p.degree} < 2", first.line, first.col)
        rels.append(p)
    try:
        return Presentation(field, tuple(gens), tuple(rels))
    except PresentationError as e:
        raise ParseError(str(e)) from None


def serialize_presentation(P: Presentation) -> str:
    lines = []
    lines.append("field Q;" if P.field.characteristic == 0 else f"field F {P.field.characteristic};")
    lines.append("gens " + " ".join(f"{g.name}:{g.degree}" for g in P.generators) + ";")
    if P.relations:
        lines.append("rels " + ";\n     ".join(P.format_poly(r) for r in P.relations) + ";")
    return "\n".join(lines) + "\n"


@dataclass
class ModuleText:
    """Parsed content of a module file, before it is tied to a Gröbner basis."""

    algebra_ref: Optional[str]
    cover: Tuple[int, ...]
    relations: List[Tuple[str, List[NcPolynomial]]]


_ALGEBRA_REF = re.compile(r"^[ \t]*algebra[ \t]+\"?([^\";#\n]+?)\"?[ \t]*;", re.M)


def module_algebra_ref(text: str) -> Optional[str]:
    m = _ALGEBRA_REF.search(text)
    return m.group(1) if m else None


def parse_module(text: str, P: Presentation) -> ModuleText:
    algebra_ref = module_algebra_ref(text)
    # blank out the path so the tokenizer never sees it; positions are kept
    text = _ALGEBRA_REF.sub(lambda m: " " * len(m.group(0)), text)
    s = _Stream(tokenize(text))
    cover = None
    rels = []
    names = list(P.names)
    while s.peek() is not None:
        tok = s.next()
        if tok.text == ";":
            continue
        if tok.text == "algebra":
            raise s.error("'algebra' must start a line: algebra <path>;", tok)
        if tok.text == "cover":
            if cover is not None:
                raise s.error("repeated 'cover' statement", tok)
            shifts = []
            while not s.at(";"):
                sign = 1
                if s.at("-"):
                    s.next()
                    sign = -1
                itok = s.next()
                if itok.kind != "int":
                    raise s.error("expected integer shift", itok)
                shifts.append(sign * int(itok.text))
            s.expect(";")
            cover = tuple(shifts)
        elif tok.text == "rel":
            if cover is None:
                raise s.error("'rel' before 'cover'", tok)
            ltok = s.next()
            if ltok.kind not in ("name", "int"):
                raise s.error("expected relation label", ltok)
            s.expect(":")
            entries = []
            while True:
                terms, first = _parse_poly(s, names)
                entries.append(_to_poly(P.field, terms, P.weights, first, what="entry"))
                if s.at(","):
                    s.next()
                    continue
                break
            s.expect(";")
            if len(entries) != len(cover):
                raise ParseError(
                    f"relation {ltok.text} has {len(entries)} entries, cover has {len(cover)}",
                    ltok.line, ltok.col)
            rels.append((ltok.text, entries))
        else:
            raise s.error(f"expected 'algebra', 'cover' or 'rel', found {tok.text!r}", tok)
    if cover is None:
        raise ParseError("module file has no 'cover' statement")
    return ModuleText(algebra_ref, cover, rels)
