"""Recursive-descent parser for polynomial expressions in ``p0 .. p{d-1}``.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom (('^' | '**') unary)?
    atom   := INTEGER | VARIABLE | '(' expr ')'

``^`` binds tighter than unary minus and associates to the right, so
``-p0^2`` is ``-(p0^2)``.  Division is only allowed by a nonzero constant,
which is how rational literals such as ``3/4`` are written.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from gffmod.poly import Polynomial

__all__ = ["ParseError", "parse"]


class ParseError(ValueError):
    """Raised for malformed expressions; ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


@dataclass
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(_Tok("num", num, start))
        elif name is not None:
            toks.append(_Tok("name", name, start))
        else:
            toks.append(_Tok("op", op, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, dimension: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.d = dimension

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def eat(self, *ops: str) -> _Tok | None:
        t = self.tok
        if t.kind == "op" and t.text in ops:
            self.i += 1
            return t
        return None

    def parse(self) -> Polynomial:
        if self.tok.kind == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected token {self.tok.text!r}", self.tok.pos)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            if self.eat("+"):
                p = p + self.term()
            elif self.eat("-"):
                p = p - self.term()
            else:
                return p

    def term(self) -> Polynomial:
        p = self.unary()
        while True:
            if self.eat("*"):
                p = p * self.unary()
            elif (t := self.eat("/")) is not None:
                q = self.unary()
                if not q.is_constant():
                    raise ParseError("division by a non-constant expression", t.pos)
                c = q.constant_term()
                if c == 0:
                    raise ParseError("division by zero", t.pos)
                p = p.scale(1 / c)
            else:
                return p

    def unary(self) -> Polynomial:
        if self.eat("-"):
            return -self.unary()
        if self.eat("+"):
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        t = self.eat("^", "**")
        if t is None:
            return base
        exp_pos = self.tok.pos
        e = self.unary()
        if not e.is_constant():
            raise ParseError("exponent not a nonnegative integer", exp_pos)
        k = e.constant_term()
        if k.denominator != 1 or k < 0:
            raise ParseError("exponent not a nonnegative integer", exp_pos)
        return base ** int(k)

    def atom(self) -> Polynomial:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Polynomial.constant(self.d, Fraction(int(t.text)))
        if t.kind == "name":
            self.i += 1
            m = re.fullmatch(r"p(\d+)", t.text)
            if m is None or int(m.group(1)) >= self.d or (len(m.group(1)) > 1 and m.group(1)[0] == "0"):
                raise ParseError(f"unknown variable {t.text!r}", t.pos)
            return Polynomial.variable(self.d, int(m.group(1)))
        if self.eat("("):
            p = self.expr()
            if self.eat(")") is None:
                raise ParseError("expected ')'", self.tok.pos)
            return p
        if t.kind == "end":
            raise ParseError("unexpected end of expression", t.pos)
        raise ParseError(f"unexpected token {t.text!r}", t.pos)


def parse(expr: str, dimension: int) -> Polynomial:
    """Parse ``expr`` into an exact expanded polynomial in ``dimension`` variables."""
    if dimension < 1:
        raise ValueError("dimension must be positive")
    return _Parser(expr, dimension).parse()
