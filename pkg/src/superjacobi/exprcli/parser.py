"""Recursive-descent parser for polynomial expressions over a chart.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nonneg-int)?
    base   := rational | identifier | '(' expr ')' | '-' factor

A rational literal is ``digits`` or ``digits/digits`` written without
spaces. Identifiers must name coordinates of the chart. Powers are only
allowed on even subexpressions; this is checked during elaboration so the
error can point at the offending base.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from ..errors import ChartError, ExprError
from ..superpoly import Chart, Parity, SuperPolynomial

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ExprError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            for i, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            tokens.append(Token(kind, text, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# --- AST -------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Var:
    name: str
    index: int
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Sum:
    # each term carries its sign, +1 or -1
    terms: Tuple[Tuple[int, "Node"], ...]
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int
    line: int = 0
    col: int = 0


Node = Union[Num, Var, Neg, Sum, Product, Power]


@dataclass(frozen=True)
class ExpressionAST:
    root: Node
    chart: Chart
    source: str


class _Parser:
    def __init__(self, src: str, chart: Chart):
        self.tokens = tokenize(src)
        self.i = 0
        self.chart = chart

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ExprError(msg, tok.line, tok.col)

    def eat(self, text):
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        self.i += 1

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        start = self.tok
        terms = [(1, self.term())]
        while self.tok.text in ("+", "-"):
            sign = 1 if self.tok.text == "+" else -1
            self.i += 1
            terms.append((sign, self.term()))
        if len(terms) == 1:
            return terms[0][1]
        return Sum(tuple(terms), start.line, start.col)

    def term(self) -> Node:
        start = self.tok
        factors = [self.factor()]
        while self.tok.text == "*":
            self.i += 1
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors), start.line, start.col)

    def factor(self) -> Node:
        start = self.tok
        node = self.base()
        if self.tok.text == "^":
            self.i += 1
            if self.tok.kind != "num" or "/" in self.tok.text:
                raise self.error("exponent must be a non-negative integer")
            exp = int(self.tok.text)
            self.i += 1
            node = Power(node, exp, start.line, start.col)
        return node

    def base(self) -> Node:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            num, _, den = tok.text.partition("/")
            if den and int(den) == 0:
                raise self.error("zero denominator", tok)
            return Num(Fraction(int(num), int(den or 1)), tok.line, tok.col)
        if tok.kind == "ident":
            self.i += 1
            try:
                idx = self.chart.index(tok.text)
            except ChartError:
                raise self.error(f"unknown identifier {tok.text!r}", tok) from None
            return Var(tok.text, idx, tok.line, tok.col)
        if tok.text == "(":
            self.i += 1
            node = self.expr()
            self.eat(")")
            return node
        if tok.text == "-":
            self.i += 1
            return Neg(self.factor(), tok.line, tok.col)
        found = tok.text or "end of input"
        raise self.error(f"expected a number, identifier or '(', found {found!r}")


def parse_expr(src: str, chart: Chart) -> ExpressionAST:
    """Parse ``src`` into an AST whose identifiers all name coordinates of ``chart``."""
    return ExpressionAST(_Parser(src, chart).parse(), chart, src)


def _elaborate(node: Node, chart: Chart) -> SuperPolynomial:
    if isinstance(node, Num):
        return chart.const(node.value)
    if isinstance(node, Var):
        return chart.var(node.index)
    if isinstance(node, Neg):
        return -_elaborate(node.operand, chart)
    if isinstance(node, Sum):
        out = chart.zero()
        for sign, t in node.terms:
            v = _elaborate(t, chart)
            out = out + v if sign > 0 else out - v
        return out
    if isinstance(node, Product):
        out = chart.one()
        for f in node.factors:
            out = out * _elaborate(f, chart)
        return out
    if isinstance(node, Power):
        b = _elaborate(node.base, chart)
        if set(b.parity_parts()) - {Parity.EVEN}:
            raise ExprError("power of an odd or mixed-parity expression", node.line, node.col)
        return b ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def elaborate(ast: ExpressionAST) -> SuperPolynomial:
    """Evaluate an AST to a polynomial on its chart."""
    return _elaborate(ast.root, ast.chart)


def parse_poly(src: str, chart: Chart) -> SuperPolynomial:
    return elaborate(parse_expr(src, chart))
