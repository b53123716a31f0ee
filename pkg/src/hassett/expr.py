"""
Text syntax for divisor classes.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | NUMBER | atom | '(' expr ')'
    atom   := kappa | lambda | psi | psi(i) | Dirr | Dnod | Dsec
            | Dsec(i,j) | D(j;{i,...})

NUMBER is an integer or ``p/q``.  ``psi``, ``Dnod`` and ``Dsec`` are the
aggregate classes.  Generators print in exactly this syntax, so the
output of ``str(c)`` parses back to ``c``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import (
    DivisorClass, ModuliSpace, aggregate_classes, d_irr, d_nodal, d_sec, kappa, lam, psi,
)


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_]+)
  | (?P<set>\{[^}]*\})
  | (?P<op>[-+*();,−])
""", re.VERBOSE)


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r at position %d" % (text[pos], pos))
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws":
            continue
        val = m.group()
        if val == "−":
            val = "-"
        out.append((kind, val))
    return out


def parse_rational(text: str) -> Fraction:
    t = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", t):
        raise ParseError("not a rational number: %r" % text)
    try:
        return Fraction(t)
    except ZeroDivisionError:
        raise ParseError("zero denominator in %r" % text) from None


def parse_weights(text: str) -> tuple:
    t = text.strip()
    if not t:
        return ()
    return tuple(parse_rational(x) for x in t.split(","))


def parse_subset(text: str) -> frozenset:
    t = text.strip()
    if not (t.startswith("{") and t.endswith("}")):
        raise ParseError("subsets are written as {i,j,...}, got %r" % text)
    body = t[1:-1].strip()
    if not body:
        return frozenset()
    try:
        return frozenset(int(x) for x in body.split(","))
    except ValueError:
        raise ParseError("bad subset %r" % text) from None


class _Parser:
    def __init__(self, space: ModuliSpace, text: str):
        self.space = space
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, val=None):
        kind, v = self.peek()
        if kind is None:
            raise ParseError("unexpected end of expression")
        if val is not None and v != val:
            raise ParseError("expected %r, found %r" % (val, v))
        self.i += 1
        return kind, v

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError("trailing input at %r" % (self.peek()[1],))
        if isinstance(out, Fraction):
            if out:
                raise ParseError("a nonzero scalar is not a divisor class")
            return DivisorClass.zero(self.space)
        return out

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = _combine(acc, rhs, op)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[1] == "*":
            self.take()
            rhs = self.factor()
            if not isinstance(acc, Fraction) and not isinstance(rhs, Fraction):
                raise ParseError("product of two divisor classes is not a divisor class")
            acc = acc * rhs
        return acc

    def factor(self):
        kind, v = self.peek()
        if v in ("+", "-"):
            self.take()
            f = self.factor()
            return -f if v == "-" else f
        if kind == "num":
            self.take()
            return parse_rational(v)
        if v == "(":
            self.take()
            out = self.expr()
            self.take(")")
            return out
        if kind == "name":
            self.take()
            return self.atom(v)
        raise ParseError("unexpected token %r" % (v,))

    def _int(self):
        kind, v = self.take()
        if kind != "num" or "/" in v:
            raise ParseError("expected a marking index, found %r" % v)
        return int(v)

    def atom(self, name):
        S = self.space
        has_args = self.peek()[1] == "("
        if name == "kappa":
            return kappa(S)
        if name == "lambda":
            return lam(S)
        if name == "Dirr":
            return d_irr(S)
        if name == "Dnod":
            return aggregate_classes(S)[0]
        if name == "psi":
            if not has_args:
                return aggregate_classes(S)[2]
            self.take("(")
            i = self._int()
            self.take(")")
            return psi(S, i)
        if name == "Dsec":
            if not has_args:
                return aggregate_classes(S)[1]
            self.take("(")
            i = self._int()
            self.take(",")
            j = self._int()
            self.take(")")
            return d_sec(S, i, j)
        if name == "D":
            self.take("(")
            j = self._int()
            self.take(";")
            kind, v = self.take()
            if kind != "set":
                raise ParseError("expected {..} after D(%d;" % j)
            subset = parse_subset(v)
            self.take(")")
            return d_nodal(S, j, subset)
        raise ParseError("unknown symbol %r" % name)


def _combine(a, b, op):
    if isinstance(a, Fraction) != isinstance(b, Fraction):
        if isinstance(a, Fraction) and not a:
            return b if op == "+" else -b
        if isinstance(b, Fraction) and not b:
            return a
        raise ParseError("cannot add a scalar to a divisor class")
    return a + b if op == "+" else a - b


def parse_class(space: ModuliSpace, text: str) -> DivisorClass:
    """Parse ``text`` into a class on ``space``."""
    return _Parser(space, text).parse()
