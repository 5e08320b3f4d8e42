"""
Recursive-descent parser for polynomial and rational expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor | '/' factor)*     # at most one top-level '/'
    factor := ('+' | '-') factor | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Names are either polynomial variables or the field generator symbol.  Any
division produces a RationalFunction; otherwise a MultiPoly is returned.
"""

from __future__ import annotations

import re

from .poly import MultiPoly, RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, msg, pos, src):
        super().__init__(f"{msg} at position {pos}: {src!r}")
        self.pos = pos
        self.src = src


def _tokenize(src):
    toks = []
    i = 0
    n = len(src)
    while i < n:
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {src[i]!r}", i, src)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        i = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, src, names, field):
        self.src = src
        self.names = tuple(names)
        self.field = field
        self.toks = _tokenize(src)
        self.i = 0
        self.saw_div = False

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.src)

    def const(self, c):
        return MultiPoly.const(self.field, self.names, c)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            w = self.factor()
            if tok[1] == "*":
                v = v * w
            else:
                self.saw_div = True
                w = RationalFunction.of(w) if isinstance(w, RationalFunction) else w
                if (isinstance(w, MultiPoly) and not w) or (
                        isinstance(w, RationalFunction) and w.is_zero()):
                    raise ParseError("division by the zero polynomial", tok[2], self.src)
                v = _as_rf(v) / _as_rf(w)
        return v

    def factor(self):
        t = self.peek()
        if t[:2] == ("op", "-"):
            self.take()
            return -self.factor()
        if t[:2] == ("op", "+"):
            self.take()
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            t = self.take()
            if t[0] != "int":
                self.error("expected an integer exponent", t)
            n = t[1]
            if neg:
                if isinstance(base, MultiPoly) and not base:
                    raise ParseError("division by the zero polynomial", t[2], self.src)
                self.saw_div = True
                return _as_rf(base) ** (-n)
            return base ** n
        return base

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "int":
            return self.const(val)
        if kind == "name":
            if val in self.names:
                return MultiPoly.var(self.field, self.names, self.names.index(val))
            if val == self.field.name and self.field.m > 1:
                return self.const(self.field.gen)
            raise ParseError(f"unknown variable {val!r}", pos, self.src)
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return v
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.src)
        raise ParseError(f"unexpected {val!r}", pos, self.src)


def _as_rf(v):
    return v if isinstance(v, RationalFunction) else RationalFunction(v, reduce=False)


def parse_expression(src, var_names, field):
    """Parse ``src`` into a MultiPoly, or a reduced RationalFunction if it divides."""
    if not isinstance(src, str):
        raise TypeError("expression must be a string")
    p = _Parser(src, var_names, field)
    v = p.parse()
    if isinstance(v, RationalFunction):
        return RationalFunction(v.num, v.den)
    return v


def parse_poly(src, var_names, field):
    v = parse_expression(src, var_names, field)
    if isinstance(v, RationalFunction):
        if not v.is_polynomial():
            raise ParseError("expected a polynomial, got a quotient", 0, src)
        return v.as_poly()
    return v
