# affinealg/src/cli/expr.py
"""
Parser and evaluator for the textual polynomial grammar.

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" INT)?
    atom    := INT | "q" | "alpha" | "beta" | "gamma" | "x" | "y" | "(" expr ")"

``*`` is mandatory between factors and keeps the written order.  The right
operand of ``/`` must evaluate to a scalar.  Parameter names evaluate to the
algebra's parameter values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Final, Iterator, Union

from src.core.algebra import AlgebraParams
from src.core.coeffs import SYMBOLS
from src.core.errors import ExprSyntaxError, UnknownSymbol
from src.core.ncpoly import Engine, NcPoly, mul, pow

_TOKEN_RE: Final[re.Pattern[str]] = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")
_GENERATORS: Final[tuple[str, str]] = ("x", "y")


# --------------------------------------------------------------------------- #
# AST
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Sym:
    name: str
    pos: int


@dataclass(frozen=True)
class Gen:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: int


Node = Union[Num, Sym, Gen, Neg, BinOp, Pow]


# --------------------------------------------------------------------------- #
# Tokenizer & parser
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> Iterator[_Token]:
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_RE.match(text, pos)
        assert match is not None
        number, name, op = match.groups()
        start = match.start(match.lastindex or 0)
        if number is not None:
            yield _Token("int", number, start)
        elif name is not None:
            yield _Token("name", name, start)
        elif op in "+-*/^()":
            yield _Token("op", op, start)
        else:
            raise ExprSyntaxError(f"unexpected character {op!r}", start)
        pos = match.end()
    yield _Token("end", "", len(text))


class _Parser:
    def __init__(self, text: str) -> None:
        self._tokens = list(_tokenize(text))
        self._i = 0

    @property
    def _tok(self) -> _Token:
        return self._tokens[self._i]

    def _advance(self) -> _Token:
        tok = self._tok
        self._i += 1
        return tok

    def _expect(self, text: str) -> _Token:
        if self._tok.text != text or self._tok.kind != "op":
            raise ExprSyntaxError(f"expected {text!r}", self._tok.pos)
        return self._advance()

    def parse(self) -> Node:
        node = self._expr()
        if self._tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self._tok.text!r}", self._tok.pos)
        return node

    def _expr(self) -> Node:
        node = self._term()
        while self._tok.kind == "op" and self._tok.text in "+-":
            tok = self._advance()
            node = BinOp(tok.text, node, self._term(), tok.pos)
        return node

    def _term(self) -> Node:
        node = self._unary()
        while self._tok.kind == "op" and self._tok.text in "*/":
            tok = self._advance()
            node = BinOp(tok.text, node, self._unary(), tok.pos)
        return node

    def _unary(self) -> Node:
        if self._tok.kind == "op" and self._tok.text == "-":
            tok = self._advance()
            return Neg(self._unary(), tok.pos)
        return self._power()

    def _power(self) -> Node:
        base = self._atom()
        if self._tok.kind == "op" and self._tok.text == "^":
            tok = self._advance()
            if self._tok.kind != "int":
                raise ExprSyntaxError("exponent must be a non-negative integer", self._tok.pos)
            return Pow(base, int(self._advance().text), tok.pos)
        return base

    def _atom(self) -> Node:
        tok = self._tok
        if tok.kind == "int":
            self._advance()
            return Num(int(tok.text), tok.pos)
        if tok.kind == "name":
            self._advance()
            if tok.text in _GENERATORS:
                return Gen(tok.text, tok.pos)
            if tok.text in SYMBOLS:
                return Sym(tok.text, tok.pos)
            raise UnknownSymbol(f"unknown symbol {tok.text!r} at position {tok.pos}")
        if tok.kind == "op" and tok.text == "(":
            self._advance()
            node = self._expr()
            self._expect(")")
            return node
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExprSyntaxError(f"unexpected {what}", tok.pos)


def parse(text: str) -> Node:
    """Parse ``text`` into an AST; raises :class:`ExprSyntaxError` or :class:`UnknownSymbol`."""
    return _Parser(text).parse()


# --------------------------------------------------------------------------- #
# Evaluation
# --------------------------------------------------------------------------- #


def evaluate(node: Node, alg: AlgebraParams, engine: Engine = Engine.AUTO) -> NcPoly:
    if isinstance(node, Num):
        return NcPoly.constant(alg, node.value)
    if isinstance(node, Sym):
        return NcPoly.constant(alg, alg.values[SYMBOLS.index(node.name)])
    if isinstance(node, Gen):
        return NcPoly.x(alg) if node.name == "x" else NcPoly.y(alg)
    if isinstance(node, Neg):
        return -evaluate(node.operand, alg, engine)
    if isinstance(node, Pow):
        return pow(evaluate(node.base, alg, engine), node.exponent, engine)
    left = evaluate(node.left, alg, engine)
    right = evaluate(node.right, alg, engine)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return mul(left, right, engine)
    if right.degree() > 0:
        raise ExprSyntaxError("can only divide by a scalar", node.pos)
    return left / right.coefficient(0, 0)


def parse_poly(text: str, alg: AlgebraParams, engine: Engine = Engine.AUTO) -> NcPoly:
    """Parse and evaluate ``text`` to a normal form in ``alg``."""
    return evaluate(parse(text), alg, engine)
