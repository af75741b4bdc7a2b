"""Divisor expressions such as ``3H - 2E1 - 2E2`` or ``1/2 H + Gamma``.

Grammar::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := [rational ['*']] identifier | '0'
    rational := int ['/' int]

Identifiers resolve against the basis names first, then against curve names
(which expand to their classes).
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Sequence

from ..core.model import DivisorClass, SurfaceModel
from ..errors import ParseError

__all__ = ["parse_divisor", "format_divisor", "parse_divisor_in", "tokenize"]


class Token(NamedTuple):
    kind: str
    text: str
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>[+\-*/])
""", re.VERBOSE)


def tokenize(text: str) -> Iterator[Token]:
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        if m.lastgroup != "ws":
            yield Token(m.lastgroup, m.group(), pos + 1)
        pos = m.end()
    yield Token("end", "", len(text) + 1)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, 1, tok.col)

    def rational(self) -> Fraction:
        num = self.take()
        value = Fraction(int(num.text))
        if self.peek().kind == "op" and self.peek().text == "/":
            self.take()
            den = self.peek()
            if den.kind != "num":
                raise self.error("expected a denominator")
            self.take()
            if int(den.text) == 0:
                raise self.error("zero denominator", den)
            value /= int(den.text)
        return value

    def term(self) -> tuple[Fraction, Token | None]:
        coef = Fraction(1)
        tok = self.peek()
        if tok.kind == "num":
            coef = self.rational()
            if self.peek().kind == "op" and self.peek().text == "*":
                self.take()
            elif self.peek().kind != "ident":
                if coef == 0:
                    return coef, None
                raise self.error("a bare constant is not a divisor class", tok)
        ident = self.peek()
        if ident.kind != "ident":
            raise self.error("expected an identifier")
        self.take()
        return coef, ident

    def parse(self) -> list[tuple[Fraction, Token | None]]:
        terms = []
        sign = 1
        if self.peek().kind == "op" and self.peek().text in "+-":
            sign = -1 if self.take().text == "-" else 1
        while True:
            coef, ident = self.term()
            terms.append((sign * coef, ident))
            tok = self.peek()
            if tok.kind == "end":
                return terms
            if tok.kind == "op" and tok.text in "+-":
                self.take()
                sign = -1 if tok.text == "-" else 1
                continue
            raise self.error(f"unexpected {tok.text!r}")


def parse_divisor_in(text: str, basis: Sequence[str],
                     named: Mapping[str, DivisorClass] | None = None) -> DivisorClass:
    """Parse against an explicit basis and an optional map of named classes."""
    if not text.strip():
        raise ParseError("empty expression", 1, 1)
    named = named or {}
    index = {b: i for i, b in enumerate(basis)}
    coords = [Fraction(0)] * len(basis)
    for coef, ident in _Parser(text).parse():
        if ident is None:
            continue
        if ident.text in index:
            coords[index[ident.text]] += coef
        elif ident.text in named:
            for k, v in enumerate(named[ident.text].coords):
                coords[k] += coef * v
        else:
            raise ParseError(f"unknown identifier {ident.text!r}", 1, ident.col)
    return DivisorClass(coords)


def parse_divisor(text: str, model: SurfaceModel) -> DivisorClass:
    return parse_divisor_in(text, model.basis, {c.name: c.cls for c in model.curves})


def _coef_text(c: Fraction) -> str:
    if c == 1:
        return ""
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c} "


def format_divisor(d: DivisorClass, basis: Sequence[str] | SurfaceModel) -> str:
    """Canonical text form, e.g. ``3H - 2E1`` or ``3/2 H + E``."""
    if isinstance(basis, SurfaceModel):
        basis = basis.basis
    parts = []
    for c, name in zip(d.coords, basis):
        if c == 0:
            continue
        body = _coef_text(abs(c)) + name
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"
