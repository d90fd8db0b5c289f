"""Recursive-descent parser for polynomial and field-literal expressions.

Grammar (whitespace insignificant)::

    sum    := neg (('+' | '-') neg)*
    neg    := '-' neg | prod
    prod   := pow ('*' pow)*
    pow    := atom ('^' integer)?
    atom   := rational | name | '(' sum ')'

so '^' binds tighter than '*', which binds tighter than unary '-', which binds
tighter than binary '+'/'-'.  Rational literals are ``p`` or ``p/q``; names
match ``[A-Za-z][A-Za-z0-9_]*``.
"""

from __future__ import annotations

import re

from .fields import rational


class ParseError(ValueError):
    """Syntax error with a 0-based ``position`` into the source text."""

    def __init__(self, message: str, position: int):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class UnknownVariable(ParseError):
    def __init__(self, name: str, position: int):
        ParseError.__init__(self, "unknown variable or constant %r" % name, position)
        self.name = name


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            rest = text[pos:]
            if rest.strip() == "":
                break
            raise ParseError("unexpected character %r" % rest.strip()[0], pos)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Generic parser; an adapter supplies constants/variables and arithmetic."""

    def __init__(self, tokens, adapter):
        self.tokens = tokens
        self.i = 0
        self.adapter = adapter

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ParseError("expected %r" % op, pos)
        return self.advance()

    def parse(self):
        value = self.sum()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected trailing input", pos)
        return value

    def sum(self):
        value = self.neg()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op in "+-":
                self.advance()
                rhs = self.neg()
                value = self.adapter.add(value, rhs) if op == "+" else self.adapter.sub(value, rhs)
            else:
                return value

    def neg(self):
        kind, op, _ = self.peek()
        if kind == "op" and op == "-":
            self.advance()
            return self.adapter.neg(self.neg())
        return self.prod()

    def prod(self):
        value = self.pow()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op == "*":
                self.advance()
                value = self.adapter.mul(value, self.pow())
            else:
                return value

    def pow(self):
        value = self.atom()
        kind, op, _ = self.peek()
        if kind == "op" and op == "^":
            self.advance()
            tkind, tvalue, tpos = self.advance()
            if tkind != "number" or "/" in tvalue:
                raise ParseError("exponent must be a nonnegative integer", tpos)
            value = self.adapter.pow(value, int(tvalue))
        return value

    def atom(self):
        kind, value, pos = self.advance()
        if kind == "number":
            return self.adapter.number(rational(value))
        if kind == "name":
            return self.adapter.name(value, pos)
        if kind == "op" and value == "(":
            inner = self.sum()
            self.expect_op(")")
            return inner
        raise ParseError("expected a term", pos)


def parse_expression(text: str, adapter):
    return _Parser(tokenize(text), adapter).parse()


class _FieldAdapter:
    def __init__(self, field, constants):
        self.field = field
        self.constants = constants

    def add(self, a, b):
        return self.field.add(a, b)

    def sub(self, a, b):
        return self.field.sub(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def pow(self, a, e):
        return self.field.pow(a, e)

    def number(self, q):
        return self.field.from_rational(q)

    def name(self, name, pos):
        if name in self.constants:
            return self.constants[name]
        raise UnknownVariable(name, pos)


def parse_field_literal(text: str, field, constants=None):
    """Parse a field element; cyclotomic fields expose the reserved name 'zeta'."""
    bound = dict(constants or {})
    if hasattr(field, "zeta"):
        bound.setdefault("zeta", field.zeta)
    return parse_expression(text, _FieldAdapter(field, bound))
