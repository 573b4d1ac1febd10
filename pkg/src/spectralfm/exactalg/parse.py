"""Polynomial text format.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom [('^'|'**') unary]
    atom   := INTEGER | NAME | '(' expr ')'

Names are ring variables or ``lambda`` (also ``λ``).  Division is only by
nonzero constants, exponents must evaluate to nonnegative integers.
:func:`format_poly` prints text that this parser reads back to the same
polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, List, Tuple

from .poly import Poly
from .scalar import LAMBDA, PARAM, Scalar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_λ][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        pointer = " " * pos + "^"
        super().__init__(f"{message} at position {pos}\n  {text}\n  {pointer}")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vars: Tuple[str, ...]):
        self.text = text
        self.vars = vars
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}", tok)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-" and len(tok[1]) == 1:
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term() * sign
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in ("+", "-"):
                self.take()
                rhs = self.term()
                acc = acc + rhs if tok[1] == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Poly:
        acc = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in ("*", "/"):
                self.take()
                rhs_tok = self.peek()
                rhs = self.unary()
                if tok[1] == "*":
                    acc = acc * rhs
                else:
                    if not rhs.is_constant():
                        self.fail("division by a non-constant polynomial", rhs_tok)
                    if rhs.constant_value() == 0:
                        self.fail("division by zero", rhs_tok)
                    acc = acc / rhs.constant_value()
            elif tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "("):
                self.fail("missing operator (implicit multiplication is not supported)")
            else:
                return acc

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.unary()
        if tok[0] == "op" and tok[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            etok = self.peek()
            exp = self.unary()
            if not exp.is_constant():
                self.fail("exponent must be a constant", etok)
            k = exp.constant_value()
            if not isinstance(k, Fraction) or k.denominator != 1 or k < 0:
                self.fail("exponent must be a nonnegative integer", etok)
            return base ** int(k)
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok[0] == "num":
            return Poly.const(self.vars, Fraction(int(tok[1])))
        if tok[0] == "name":
            name = tok[1]
            if name in (PARAM, "λ"):
                return Poly.const(self.vars, LAMBDA)
            if name not in self.vars:
                self.fail(f"unknown variable {name!r} (declared: {', '.join(self.vars) or 'none'})", tok)
            return Poly.var(self.vars, name)
        if tok[0] == "op" and tok[1] == "(":
            p = self.expr()
            self.expect(")")
            return p
        if tok[0] == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {tok[1]!r}", tok)


def parse_poly(text: str, vars: Iterable[str]) -> Poly:
    """Parse polynomial text over the given variables."""
    return _Parser(text, tuple(vars)).parse()


def parse_scalar(text) -> Scalar:
    """Parse a constant (rational or rational function of lambda)."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    p = parse_poly(str(text), ())
    return p.constant_value()
