"""Tokenizer and recursive-descent parser for the expression language.

    stmt   := 'let' NAME '=' expr | expr
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '~') unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | NAME | NAME '(' args ')' | '(' expr ')' | '[' args ']' | STRING

``w`` is omega and ``eps_k`` the k-th epsilon number.  Columns are 1-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<str>"[^"]*")
  | (?P<op>[-+*/^()\[\],=~])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    col: int


def tokenize(text: str) -> list:
    out, i = [], 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", i + 1, "token")
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), i + 1))
        i = m.end()
    out.append(Token("end", "", len(text) + 1))
    return out


# AST nodes are plain tuples tagged by their first element:
#   ("num", int) ("name", str) ("str", str) ("list", [nodes])
#   ("call", name, [nodes], col) ("neg", node) ("approx", node)
#   ("bin", op, left, right, col) ("pow", base, exponent, col) ("let", name, node)

class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            self.fail(repr(text))
        return self.advance()

    def fail(self, expected: str):
        got = self.tok.text or "end of input"
        raise ParseError(f"expected {expected}, got {got!r}", self.tok.col, expected)

    def statement(self):
        if self.tok.kind == "name" and self.tok.text == "let":
            self.advance()
            if self.tok.kind != "name":
                self.fail("a name")
            name = self.advance().text
            self.expect("=")
            node = ("let", name, self.expr())
        else:
            node = self.expr()
        if self.tok.kind != "end":
            self.fail("an operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-"):
            t = self.advance()
            node = ("bin", t.text, node, self.term(), t.col)
        return node

    def term(self):
        node = self.unary()
        while self.tok.text in ("*", "/"):
            t = self.advance()
            node = ("bin", t.text, node, self.unary(), t.col)
        return node

    def unary(self):
        if self.tok.text == "-":
            self.advance()
            return ("neg", self.unary())
        if self.tok.text == "~":
            self.advance()
            return ("approx", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.tok.text == "^":
            t = self.advance()
            node = ("pow", node, self.unary(), t.col)
        return node

    def args(self, close: str) -> list:
        items = []
        if self.tok.text == close:
            self.advance()
            return items
        while True:
            items.append(self.expr())
            if self.tok.text == ",":
                self.advance()
                continue
            self.expect(close)
            return items

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return ("num", int(t.text))
        if t.kind == "str":
            self.advance()
            return ("str", t.text[1:-1])
        if t.kind == "name":
            self.advance()
            if self.tok.text == "(":
                self.advance()
                return ("call", t.text, self.args(")"), t.col)
            return ("name", t.text)
        if t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.text == "[":
            self.advance()
            return ("list", self.args("]"))
        self.fail("a number, name, '(' or '['")


def parse(text: str):
    return Parser(text).statement()
