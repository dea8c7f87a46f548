"""Tiny recursive-descent parser for arithmetic expressions.

The grammar is shared by the scalar field, the free algebra and the CLI
series input::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' signed_int)?
    atom   := NUMBER | NAME | '(' expr ')'

Names are resolved through a callback, so the same parser evaluates into
whatever algebra the caller supplies.
"""

import re
from fractions import Fraction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9~]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, resolve, divide):
        self.toks = tokens
        self.i = 0
        self.resolve = resolve
        self.divide = divide

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input")
        if op is not None and tok != ("op", op):
            raise ParseError(f"expected {op!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.unary()
            val = val * rhs if op == "*" else self.divide(val, rhs)
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            return base ** (sign * val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.resolve(Fraction(val))
        if kind == "name":
            return self.resolve(val)
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_expression(text, resolve, divide=None):
    """Evaluate ``text``; ``resolve`` maps a name or a Fraction literal to a value."""
    if divide is None:
        divide = lambda a, b: a / b
    p = _Parser(tokenize(text), resolve, divide)
    if not p.toks:
        raise ParseError("empty expression")
    val = p.expr()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input at token {p.i}")
    return val
