"""Recursive-descent parser for polynomial expressions with exact rational coefficients.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | atom ('^' nat)?
    atom   := integer | name | '(' expr ')'

Division is kept in the syntax tree; turning a tree into a polynomial
requires every divisor to be a nonzero constant.  Juxtaposition such as
``2x`` is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import ParseError
from .poly import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    offset: int


@dataclass(frozen=True)
class Num:
    value: Fraction
    offset: int


@dataclass(frozen=True)
class Name:
    name: str
    offset: int


@dataclass(frozen=True)
class Neg:
    arg: "Node"
    offset: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    offset: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int
    offset: int


Node = Union[Num, Name, Neg, BinOp, Pow]


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return line, offset - start + 1


def _error(text: str, offset: int, message: str) -> ParseError:
    line, col = _position(text, offset)
    return ParseError(message, line, col, text)


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(Token("num", num, start))
        elif name is not None:
            out.append(Token("name", name, start))
        else:
            if op not in "+-*/^()":
                raise _error(text, start, f"unexpected character {op!r}")
            out.append(Token("op", op, start))
        pos = m.end()
    out.append(Token("end", "", len(text.rstrip()) if text.strip() else 0))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return _error(self.text, tok.offset, message)

    def is_op(self, *ops) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Node:
        if self.tok.kind == "end":
            raise self.fail("empty expression")
        node = self.expr()
        if self.tok.kind != "end":
            if self.tok.kind in ("num", "name") or self.is_op("("):
                raise self.fail("implicit multiplication is not allowed; write '*'")
            raise self.fail(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.is_op("+", "-"):
            op = self.advance()
            node = BinOp(op.text, node, self.term(), op.offset)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.is_op("*", "/"):
            op = self.advance()
            node = BinOp(op.text, node, self.factor(), op.offset)
        return node

    def factor(self) -> Node:
        if self.is_op("-", "+"):
            op = self.advance()
            arg = self.factor()
            return Neg(arg, op.offset) if op.text == "-" else arg
        node = self.atom()
        if self.is_op("^"):
            op = self.advance()
            if self.tok.kind != "num":
                raise self.fail("expected a natural number exponent after '^'")
            node = Pow(node, int(self.advance().text), op.offset)
        return node

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(Fraction(int(t.text)), t.offset)
        if t.kind == "name":
            self.advance()
            return Name(t.text, t.offset)
        if self.is_op("("):
            self.advance()
            node = self.expr()
            if not self.is_op(")"):
                raise self.fail("expected ')'")
            self.advance()
            return node
        if t.kind == "end":
            raise self.fail("unexpected end of input")
        raise self.fail(f"unexpected {t.text!r}")


def parse_expression(text: str) -> Node:
    return _Parser(text).parse()


def names_in(node: Node, acc: List[str] | None = None) -> List[str]:
    """Variable names in order of first appearance."""
    acc = [] if acc is None else acc
    if isinstance(node, Name):
        if node.name not in acc:
            acc.append(node.name)
    elif isinstance(node, Neg):
        names_in(node.arg, acc)
    elif isinstance(node, Pow):
        names_in(node.base, acc)
    elif isinstance(node, BinOp):
        names_in(node.left, acc)
        names_in(node.right, acc)
    return acc


def to_polynomial(node: Node, names: Sequence[str], text: str = "") -> Polynomial:
    index = {name: i for i, name in enumerate(names)}
    n = len(names)

    def rec(nd) -> Polynomial:
        if isinstance(nd, Num):
            return Polynomial.constant(nd.value, n)
        if isinstance(nd, Name):
            if nd.name not in index:
                raise _error(text, nd.offset, f"unknown variable {nd.name!r}")
            return Polynomial.var(index[nd.name], n)
        if isinstance(nd, Neg):
            return -rec(nd.arg)
        if isinstance(nd, Pow):
            return rec(nd.base) ** nd.exp
        left, right = rec(nd.left), rec(nd.right)
        if nd.op == "+":
            return left + right
        if nd.op == "-":
            return left - right
        if nd.op == "*":
            return left * right
        if not right.is_constant():
            raise _error(text, nd.offset, "division by a non-constant expression")
        c = right.constant_term()
        if c == 0:
            raise _error(text, nd.offset, "division by zero")
        return left.scale(1 / c)

    return rec(node)


def evaluate(node: Node, env: Mapping[str, Fraction], text: str = "") -> Fraction:
    """Exact value of an expression at rational values of its names."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Name):
        if node.name not in env:
            raise _error(text, node.offset, f"unknown variable {node.name!r}")
        return Fraction(env[node.name])
    if isinstance(node, Neg):
        return -evaluate(node.arg, env, text)
    if isinstance(node, Pow):
        return evaluate(node.base, env, text) ** node.exp
    a, b = evaluate(node.left, env, text), evaluate(node.right, env, text)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if b == 0:
        raise _error(text, node.offset, "division by zero")
    return a / b


def parse_polynomial(text: str, names: Optional[Sequence[str]] = None
                     ) -> Tuple[Polynomial, List[str]]:
    """Parse ``text``; variables are ordered by ``names`` or by first appearance."""
    node = parse_expression(text)
    if names is None:
        names = names_in(node)
    names = list(names)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name", 1, 1, text)
    return to_polynomial(node, names, text), names


def parse_names(text: str) -> List[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    for s in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", s):
            raise ParseError(f"bad variable name {s!r}", 1, 1, text)
    return names


def parse_sequence(text: str, parameter: str = "n"):
    """Parse a comma-separated point whose coordinates are expressions in ``parameter``.

    Returns a callable mapping an integer to the rational point.
    """
    parts: List[Tuple[Node, str]] = []
    for piece in text.split(","):
        parts.append((parse_expression(piece), piece))

    def point(value: int):
        env: Dict[str, Fraction] = {parameter: Fraction(value)}
        return tuple(evaluate(node, env, src) for node, src in parts)

    return point
