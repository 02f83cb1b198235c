"""Text grammar for polynomials and the canonical printer.

Grammar (EBNF)::

    polynomial = [ "+" | "-" ] term { ( "+" | "-" ) term } ;
    term       = factor { "*" factor } ;
    factor     = atom [ "^" integer ] ;
    atom       = number | variable | "(" polynomial ")" ;
    number     = integer [ "/" integer ] ;
    variable   = "t0" | "t1" | "x0" | "x1" | "x2" | "x3" | "x4" ;

Whitespace is ignored.  ``a/b`` is only accepted between two integer
literals (a rational constant); any other ``/`` is a division error.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .field import QQ, Field
from .poly import VARNAMES, Polynomial


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, src: str):
        super().__init__(f"{message} at position {pos}: {src!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(src: str):
    pos = 0
    tokens = []
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            break
        if m.group(1):
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, field: Field):
        self.src = src
        self.field = field
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(msg, tok[2], self.src)

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def polynomial(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                t = self.term()
                result = result + t if tok[1] == "+" else result - t
            else:
                return result

    def term(self):
        result = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                result = result * self.factor()
            elif tok[0] == "op" and tok[1] == "/":
                self.error("division is not supported")
            else:
                return result

    def factor(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "int":
                self.error("expected integer exponent", exp)
            return base**exp[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                after = self.tokens[self.i + 1]
                if after[0] != "int":
                    self.error("division is not supported", nxt)
                self.take()
                self.take()
                if after[1] == 0:
                    self.error("zero denominator", after)
                return Polynomial.constant(Fraction(val, after[1]), self.field)
            return Polynomial.constant(val, self.field)
        if kind == "name":
            if val not in VARNAMES:
                self.error(f"unknown variable {val!r}", tok)
            return Polynomial.var(val, self.field)
        if kind == "op" and val == "(":
            inner = self.polynomial()
            self.expect_op(")")
            return inner
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)


def parse(src: str, field: Field = QQ) -> Polynomial:
    """Parse ``src`` into a canonical :class:`Polynomial` over ``field``."""
    p = _Parser(src, field)
    if p.peek()[0] == "end":
        p.error("empty polynomial")
    result = p.polynomial()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return result


def _format_coefficient(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_polynomial(f: Polynomial) -> str:
    if not f:
        return "0"
    parts = []
    for mon, c in f.sorted_terms():
        c = f.field.signed(c)
        neg = c < 0
        c = -c if neg else c
        factors = []
        for name, e in zip(VARNAMES, mon):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if c != 1 or not factors:
            factors.insert(0, _format_coefficient(c))
        body = "*".join(factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)

