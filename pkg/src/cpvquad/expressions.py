"""Tiny expression language for integrands given on the command line.

Grammar (whitespace insignificant, no implicit multiplication):

    expression : term (('+' | '-') term)*
    term       : factor (('*' | '/') factor)*
    factor     : '-' factor | power
    power      : primary ('^' factor)?
    primary    : NUMBER | 'x' | CONST | FUNC '(' expression ')'
               | '(' expression ')'

'^' is right-associative and binds tighter than unary minus, so -x^2 is
-(x^2) and 2^3^2 is 2^(3^2).  Functions are sin, cos, tan, exp, log, sqrt,
abs; constants are pi and e; the only variable is x.  Every identifier is
resolved at parse time, so an Expr never fails to evaluate: domain
violations (log of a nonpositive value, even roots of negative values,
division by zero) evaluate to NaN, which the quadrature engine then reports
as a nonfinite integrand at that point.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

__all__ = [
    "BinOp",
    "Call",
    "Const",
    "Expr",
    "Neg",
    "Num",
    "ParseError",
    "Var",
    "compile_expression",
    "evaluate",
    "parse",
    "to_source",
]


class ParseError(ValueError):
    """Syntax or resolution error, carrying the source offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


@dataclass(frozen=True)
class Num:
    """Nonnegative numeric literal (minus signs parse as Neg)."""

    value: float

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value >= 0.0):
            raise ValueError(f"literal must be finite and >= 0, got {self.value!r}")


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    name: str

    def __post_init__(self):
        if self.name not in _CONSTANTS:
            raise ValueError(f"unknown constant {self.name!r}")


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"

    def __post_init__(self):
        if self.op not in ("+", "-", "*", "/", "^"):
            raise ValueError(f"unknown operator {self.op!r}")


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Expr"

    def __post_init__(self):
        if self.name not in _FUNCTIONS:
            raise ValueError(f"unknown function {self.name!r}")


Expr = Union[Num, Var, Const, Neg, BinOp, Call]

_FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
    "abs": math.fabs,
}

_CONSTANTS: dict[str, float] = {
    "pi": math.pi,
    "e": math.e,
}

_TOKEN_RE = re.compile(
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


def _tokenize(source: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(source):
        if source[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise ParseError(f"unexpected character {source[pos]!r}", pos)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), pos))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.index = 0

    def _peek(self) -> tuple[str, str, int]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", "", len(self.source))

    def _advance(self) -> tuple[str, str, int]:
        token = self._peek()
        self.index += 1
        return token

    def _expect_op(self, text: str) -> None:
        kind, value, pos = self._peek()
        if kind != "op" or value != text:
            raise ParseError(f"expected {text!r}", pos)
        self.index += 1

    def parse(self) -> Expr:
        expr = self.expression()
        kind, value, pos = self._peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r} after expression", pos)
        return expr

    def expression(self) -> Expr:
        node = self.term()
        while True:
            kind, value, _ = self._peek()
            if kind == "op" and value in ("+", "-"):
                self.index += 1
                node = BinOp(value, node, self.term())
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            kind, value, _ = self._peek()
            if kind == "op" and value in ("*", "/"):
                self.index += 1
                node = BinOp(value, node, self.factor())
            else:
                return node

    def factor(self) -> Expr:
        kind, value, _ = self._peek()
        if kind == "op" and value == "-":
            self.index += 1
            return Neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        kind, value, _ = self._peek()
        if kind == "op" and value == "^":
            self.index += 1
            return BinOp("^", base, self.factor())
        return base

    def primary(self) -> Expr:
        kind, value, pos = self._advance()
        if kind == "number":
            return Num(float(value))
        if kind == "name":
            if value == "x":
                return Var()
            if value in _CONSTANTS:
                return Const(value)
            if value in _FUNCTIONS:
                self._expect_op("(")
                arg = self.expression()
                self._expect_op(")")
                return Call(value, arg)
            next_kind, next_value, _ = self._peek()
            if next_kind == "op" and next_value == "(":
                raise ParseError(f"unknown function {value!r}", pos)
            raise ParseError(f"unknown identifier {value!r}", pos)
        if kind == "op" and value == "(":
            expr = self.expression()
            self._expect_op(")")
            return expr
        if kind == "end":
            raise ParseError("unexpected end of expression", pos)
        raise ParseError(f"unexpected {value!r}", pos)


def parse(source: str) -> Expr:
    """Parse `source` into an Expr, or raise ParseError with the offset."""
    return _Parser(source).parse()


def _eval(expr: Expr, x: float) -> float:
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Var):
        return x
    if isinstance(expr, Const):
        return _CONSTANTS[expr.name]
    if isinstance(expr, Neg):
        return -_eval(expr.operand, x)
    if isinstance(expr, Call):
        return _FUNCTIONS[expr.name](_eval(expr.arg, x))
    left = _eval(expr.left, x)
    right = _eval(expr.right, x)
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return left * right
    if expr.op == "/":
        return left / right
    # math.pow keeps '^' real-valued; (-8)^(1/3) is a domain error, not a
    # complex number
    return math.pow(left, right)


def evaluate(expr: Expr, x: float) -> float:
    """Evaluate at x with NaN for any domain violation along the way."""
    try:
        return _eval(expr, x)
    except (ValueError, ZeroDivisionError, OverflowError):
        return math.nan


# binding strength of each printable position; higher binds tighter
_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_POW = 4
_PREC_ATOM = 5

_OP_PREC = {"+": _PREC_ADD, "-": _PREC_ADD, "*": _PREC_MUL, "/": _PREC_MUL,
            "^": _PREC_POW}


def _node_prec(expr: Expr) -> int:
    if isinstance(expr, BinOp):
        return _OP_PREC[expr.op]
    if isinstance(expr, Neg):
        return _PREC_NEG
    return _PREC_ATOM


def _render(expr: Expr, min_prec: int) -> str:
    if isinstance(expr, Num):
        return repr(expr.value)
    if isinstance(expr, Var):
        return "x"
    if isinstance(expr, Const):
        return expr.name
    if isinstance(expr, Call):
        return f"{expr.name}({_render(expr.arg, _PREC_ADD)})"
    if isinstance(expr, Neg):
        text = "-" + _render(expr.operand, _PREC_NEG)
    else:
        prec = _OP_PREC[expr.op]
        if expr.op == "^":
            # right-associative: parenthesize any left operand below atom,
            # let the right operand be a factor (unary minus included)
            left = _render(expr.left, _PREC_ATOM)
            right = _render(expr.right, _PREC_NEG)
        else:
            left = _render(expr.left, prec)
            right = _render(expr.right, prec + 1)
        text = f"{left}{expr.op}{right}"
    if _node_prec(expr) < min_prec:
        return f"({text})"
    return text


def to_source(expr: Expr) -> str:
    """Render with the fewest parentheses; reparsing gives an equal tree."""
    return _render(expr, _PREC_ADD)


def compile_expression(source: str) -> Callable[[float], float]:
    """Parse once and return a plain float function of x."""
    expr = parse(source)
    def f(x: float) -> float:
        return evaluate(expr, x)
    return f
