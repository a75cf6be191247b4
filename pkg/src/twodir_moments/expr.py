"""Constant expressions for mask entries.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | atom
    atom   := NUMBER | 'sqrt' '(' expr ')' | '(' expr ')'

Lets mask files hold surds such as ``(2-sqrt(7))/4/sqrt(2)`` verbatim.
"""

from __future__ import annotations

import math
import re

from .errors import ExprError

__all__ = ["parse_const_expr"]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprError(f"unexpected character {text[col]!r}", col)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value:
            found = "end of input" if kind == "end" else repr(text)
            raise ExprError(f"expected {value!r}, found {found}", pos)

    def expr(self) -> float:
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> float:
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value *= rhs
            elif rhs == 0:
                raise ExprError("division by zero", pos)
            else:
                value /= rhs
        return value

    def unary(self) -> float:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self) -> float:
        kind, text, pos = self.take()
        if kind == "num":
            return float(text)
        if kind == "name":
            if text != "sqrt":
                raise ExprError(f"unknown name {text!r}", pos)
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            if arg < 0:
                raise ExprError("sqrt of negative", pos)
            return math.sqrt(arg)
        if text == "(":
            value = self.expr()
            self.expect(")")
            return value
        found = "end of input" if kind == "end" else repr(text)
        raise ExprError(f"unexpected {found}", pos)


def parse_const_expr(text: str) -> float:
    """Evaluate a constant expression string.

    >>> parse_const_expr("3/4/sqrt(2)")
    0.5303300858899106
    """
    parser = _Parser(text)
    value = parser.expr()
    kind, tok, pos = parser.peek()
    if kind != "end":
        raise ExprError(f"unexpected {tok!r}", pos)
    return value
