"""Recursive-descent parser for the textual expression grammar.

Precedence, lowest first: ``+``/``-`` sums, ``*`` products, unary minus,
integer power ``^``, then atoms (function calls, parentheses, variables
``z1 .. zn``, literals ``2``, ``0.5``, ``3i``, ``i``).  ``w`` is accepted as
an alias for ``z1`` in one-variable expressions.  Whitespace is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .expr import FUNCTIONS, Add, Const, Expr, Func, Mul, Neg, PowInt, Var


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}: {text!r}")


class UnknownIdentifier(ParseError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^(),/])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.pos, self.text)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def parse(self) -> Expr:
        e = self.sum()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def sum(self) -> Expr:
        e = self.product()
        while True:
            if self.accept("+"):
                e = _fold_add(e, self.product())
            elif self.accept("-"):
                e = _fold_add(e, _fold_neg(self.product()))
            else:
                return e

    def product(self) -> Expr:
        e = self.unary()
        while True:
            if self.accept("*"):
                e = Mul(e, self.unary())
            elif self.tok.kind == "op" and self.tok.text == "/":
                raise self.error("division is not part of the grammar")
            else:
                return e

    def unary(self) -> Expr:
        if self.accept("-"):
            return _fold_neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            tok = self.tok
            if tok.kind == "op" and tok.text == "-":
                raise self.error("negative exponent")
            if tok.kind != "num" or not tok.text.isdigit():
                raise self.error("exponent must be a non-negative integer literal")
            self.i += 1
            if self.tok.kind == "ident" and self.tok.text == "i":
                raise self.error("exponent must be a non-negative integer literal", tok)
            return PowInt(base, int(tok.text))
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            value = float(tok.text)
            if self.tok.kind == "ident" and self.tok.text == "i" and self.tok.pos == tok.pos + len(tok.text):
                self.i += 1
                return Const(complex(0.0, value))
            return Const(complex(value, 0.0))
        if tok.kind == "ident":
            self.i += 1
            name = tok.text
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.sum()
                self.expect(")")
                return Func(name, arg)
            if name == "i":
                return Const(1j)
            if name == "w" and self.n == 1:
                return Var(0)
            m = re.fullmatch(r"z([1-9]\d*)", name)
            if m and int(m.group(1)) <= self.n:
                return Var(int(m.group(1)) - 1)
            raise UnknownIdentifier(f"unknown identifier {name!r}", tok.pos, self.text)
        if self.accept("("):
            e = self.sum()
            self.expect(")")
            return e
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def _fold_add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    return Add(a, b)


def _fold_neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    return Neg(a)


def parse_expr(text: str, n: int) -> Expr:
    """Parse ``text`` as an expression in the variables ``z1 .. zn``."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    return _Parser(text, n).parse()


def parse_complex(text: str) -> complex:
    """Parse a constant literal such as ``-152``, ``2i`` or ``(0.5-1.5i)``."""
    e = parse_expr(text, 0)
    if not isinstance(e, Const):
        raise ParseError("expected a constant", 0, text)
    return e.value
