# core/parse.py
"""
Polynomial expression parser.

Grammar (whitespace insignificant):
    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    exponent := INT ('^' exponent)?          right-associative, integers only
    atom   := INT | IDENT | '(' expr ')'
"""
from __future__ import annotations

import re
from typing import List, NamedTuple, Optional

from .errors import ExponentOverflowError, ParseError, UnknownVariableError
from .field import EXP_LIMIT, FieldCtx, VarCtx
from .poly import MultiPoly, poly_pow

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")

# total degree allowed for a product or power with more than one term
EXPANSION_DEGREE_CAP = 4096


def _bound_expansion(degree: int, pos: int) -> None:
    if degree > EXPANSION_DEGREE_CAP:
        raise ExponentOverflowError(
            f"expansion at position {pos} has degree {degree}, over the cap {EXPANSION_DEGREE_CAP}")


class Token(NamedTuple):
    kind: str   # int | ident | op | end
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup or "op"
        start = m.start(kind)
        out.append(Token(kind, m.group(kind), start))
        i = m.end()
    out.append(Token("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, vars: VarCtx, field: FieldCtx) -> None:
        self.toks = tokenize(text)
        self.i = 0
        self.vars = vars
        self.field = field

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _accept(self, op: str) -> Optional[Token]:
        t = self.tok
        if t.kind == "op" and t.text == op:
            self.i += 1
            return t
        return None

    def _expect(self, op: str) -> Token:
        t = self._accept(op)
        if t is None:
            raise ParseError(f"expected '{op}', found {self.tok.text or 'end of input'!r}", self.tok.pos)
        return t

    def parse(self) -> MultiPoly:
        if self.tok.kind == "end":
            raise ParseError("empty expression", 0)
        f = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return f

    def expr(self) -> MultiPoly:
        f = self.term()
        while True:
            if self._accept("+"):
                f = f + self.term()
            elif self._accept("-"):
                f = f - self.term()
            else:
                return f

    def term(self) -> MultiPoly:
        f = self.unary()
        while True:
            t = self._accept("*")
            if t is None:
                return f
            g = self.unary()
            if len(f) > 1 and len(g) > 1:
                _bound_expansion(f.total_degree() + g.total_degree(), t.pos)
            f = f * g

    def unary(self) -> MultiPoly:
        if self._accept("-"):
            return -self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        t = self._accept("^")
        if t is None:
            return base
        n = self.exponent()
        if len(base) > 1:
            _bound_expansion(n * base.total_degree(), t.pos)
        return poly_pow(base, n)

    def exponent(self) -> int:
        t = self.tok
        if t.kind != "int":
            raise ParseError("exponent must be a nonnegative integer", t.pos)
        self.i += 1
        n = int(t.text)
        if self._accept("^"):
            e = self.exponent()
            if n > 1 and e >= 64:
                raise ExponentOverflowError(f"exponent {n}^{e} exceeds 2^32")
            n = n ** e
        if n >= EXP_LIMIT:
            raise ExponentOverflowError(f"exponent {n} exceeds 2^32")
        return n

    def atom(self) -> MultiPoly:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return MultiPoly.constant(self.field, self.vars, int(t.text))
        if t.kind == "ident":
            self.i += 1
            if t.text not in self.vars.names:
                raise UnknownVariableError(t.text, t.pos)
            return MultiPoly.variable(self.field, self.vars, t.text)
        if self._accept("("):
            f = self.expr()
            self._expect(")")
            return f
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse_poly(text: str, vars: VarCtx, field: FieldCtx) -> MultiPoly:
    return _Parser(text, vars, field).parse()
