"""Multivector expression language: parser, evaluator and canonical printer.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (PRODOP factor)*      # one PRODOP per term
    PRODOP := "^" | "*" | "_|"             # wedge, Clifford, left contraction
    factor := "-" factor | "(" expr ")" | scalar | gen
    gen    := ("j" | "d") INT
    scalar := INT ["/" INT] | NAME ["^" ["-"] INT]

A ``^`` directly after a scalar name and before an integer is an exponent
(``q^-1``, ``q^2``); everywhere else ``^`` is the wedge product.  Mixing
different product operators in one term without parentheses is an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ExprSyntaxError, MixedProductsWithoutParens
from .exterior import AlgebraContext, Multivector, contract, wedge
from .scalars import Q, Scalar, q_power, _mono_text

# AST ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarLit:
    value: Scalar


@dataclass(frozen=True)
class Gen:
    kind: str  # "j" or "d"
    index: int
    pos: tuple = (1, 1)


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "^", "*", "_|"
    left: "Node"
    right: "Node"


Node = Union[ScalarLit, Gen, Neg, BinOp]

PRODUCT_OPS = ("^", "*", "_|")

# lexer -------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<gen>[jd]\d+)(?![a-zA-Z0-9_])"
    r"|(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>_\||[-+*^()/])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", text, line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "ws":
            nl = s.count("\n")
            if nl:
                line += nl
                line_start = pos + s.rfind("\n") + 1
        else:
            toks.append(Token(s if kind == "op" else kind, s, line, col))
        pos = m.end()
    toks.append(Token("eof", "", line, pos - line_start + 1))
    return toks


# parser ------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, k=0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None, cls=ExprSyntaxError):
        tok = tok or self.peek()
        raise cls(msg, self.text, tok.line, tok.col)

    def parse(self) -> Node:
        if self.peek().kind == "eof":
            self.fail("empty expression")
        node = self.expr()
        t = self.peek()
        if t.kind != "eof":
            if t.kind in ("int", "name", "gen", "("):
                self.fail("implicit multiplication is not allowed", t)
            self.fail(f"unexpected token {t.text!r}", t)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        used = None
        while self.peek().kind in PRODUCT_OPS:
            tok = self.take()
            if used is not None and tok.kind != used:
                self.fail(
                    f"operators {used!r} and {tok.kind!r} mixed without parentheses",
                    tok,
                    MixedProductsWithoutParens,
                )
            used = tok.kind
            node = BinOp(tok.kind, node, self.factor())
        return node

    def factor(self) -> Node:
        t = self.peek()
        if t.kind == "-":
            self.take()
            return Neg(self.factor())
        if t.kind == "(":
            self.take()
            node = self.expr()
            if self.peek().kind != ")":
                self.fail(f"expected ')', found {self.peek().text or 'end of input'!r}")
            self.take()
            return node
        if t.kind == "gen":
            self.take()
            k = int(t.text[1:])
            return Gen(t.text[0], k, (t.line, t.col))
        if t.kind == "int":
            self.take()
            if self.peek().kind == "/":
                self.take()
                d = self.peek()
                if d.kind != "int":
                    self.fail("expected integer denominator", d)
                self.take()
                if int(d.text) == 0:
                    self.fail("zero denominator", d)
                return ScalarLit(Scalar.const(Fraction(int(t.text), int(d.text))))
            return ScalarLit(Scalar.const(int(t.text)))
        if t.kind == "name":
            self.take()
            nxt, after = self.peek(), self.peek(1)
            if nxt.kind == "^" and (
                after.kind == "int" or (after.kind == "-" and self.peek(2).kind == "int")
            ):
                self.take()
                neg = self.peek().kind == "-"
                if neg:
                    self.take()
                e = int(self.take().text)
                if neg:
                    if t.text != Q:
                        self.fail(f"negative exponent only allowed on {Q}", t)
                    return ScalarLit(q_power(-e))
                return ScalarLit(Scalar.var(t.text, e))
            return ScalarLit(Scalar.var(t.text))
        self.fail(f"unexpected {t.text or 'end of input'!r}", t)


def parse(text: str) -> Node:
    """Parse expression text; raises ExprSyntaxError / MixedProductsWithoutParens."""
    return _Parser(text).parse()


# evaluation --------------------------------------------------------------------


def evaluate(node: Node, context: AlgebraContext, B=None) -> Multivector:
    from .clifford import clifford_mul

    if isinstance(node, ScalarLit):
        return Multivector.scalar(context, node.value)
    if isinstance(node, Gen):
        k = context.j(node.index) if node.kind == "j" else context.d(node.index)
        return Multivector.generator(context, k)
    if isinstance(node, Neg):
        return -evaluate(node.operand, context, B)
    left = evaluate(node.left, context, B)
    right = evaluate(node.right, context, B)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "^":
        return wedge(left, right)
    if node.op == "*" and (left.grades() <= {0} or right.grades() <= {0}):
        # scalar factors commute with everything; no form needed
        return left.scale(right.scalar_part()) if right.grades() <= {0} else right.scale(left.scalar_part())
    if B is None:
        raise ValueError(f"operator {node.op!r} needs a bilinear form")
    if node.op == "*":
        return clifford_mul(left, right, B)
    return contract(left, right, B)


def evaluate_text(text: str, context: AlgebraContext, B=None) -> Multivector:
    return evaluate(parse(text), context, B)


# printing ----------------------------------------------------------------------


def _blade_text(context: AlgebraContext, mask: int) -> str:
    name = context.blade_name(mask)
    return name if bin(mask).count("1") == 1 else f"({name})"


def to_text(mv: Multivector) -> str:
    """Canonical text: terms by grade, then lexicographic blade order."""
    if mv.is_zero():
        return "0"
    parts = []
    for k, (mask, c) in enumerate(mv.sorted_items()):
        if mask == 0:
            parts.append(c.to_text())
            continue
        blade = _blade_text(mv.context, mask)
        if c.is_monomial():
            (m, a), = c.items()
            neg = a < 0
            body = _mono_text(m, -a if neg else a)
            body = blade if body == "1" else f"{body}*{blade}"
        else:
            neg = False
            body = f"({c.to_text()})*{blade}"
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


print_mv = to_text
