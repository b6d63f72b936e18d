"""A small, total expression language for user-supplied coefficient
functions and closed forms.

Grammar (precedence climbing, lowest first)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | power
    power   := primary ('^' power)?
    primary := number | identifier | identifier '(' expr (',' expr)* ')'
             | '(' expr ')'

'^' is right-associative and binds tighter than unary minus, so ``-k^2``
is ``-(k^2)``; an exponent may not start with a bare unary minus
(``2^-3`` is a syntax error, write ``2^(-3)``).  Numbers are decimal with
optional fraction and exponent.  Whitespace is insignificant.

``fact(x)`` is defined as gamma(x+1) so it accepts real arguments.
There are no user-defined functions or conditionals; evaluation is strict,
bottom-up, in double precision.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Union

from . import specfun
from .errors import (
    DivisionByZero,
    DomainError,
    ExprSyntaxError,
    UnboundVariable,
    UnknownFunction,
)

__all__ = [
    "ExprNode",
    "Constant",
    "Variable",
    "UnaryNeg",
    "BinaryOp",
    "Call",
    "parse",
    "evaluate",
    "to_source",
    "BUILTIN_FUNCTIONS",
    "MAX_SOURCE_BYTES",
]

MAX_SOURCE_BYTES = 64 * 1024
# Each counted level costs several interpreter stack frames; 120 keeps the
# parser well inside CPython's default recursion limit while allowing any
# realistic expression.
_MAX_DEPTH = 120


@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class UnaryNeg:
    child: "ExprNode"


@dataclass(frozen=True)
class BinaryOp:
    op: str  # one of + - * / ^
    left: "ExprNode"
    right: "ExprNode"


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple["ExprNode", ...]


ExprNode = Union[Constant, Variable, UnaryNeg, BinaryOp, Call]

# name -> arity
BUILTIN_FUNCTIONS: dict[str, int] = {
    "exp": 1,
    "ln": 1,
    "sin": 1,
    "cos": 1,
    "sqrt": 1,
    "gamma": 1,
    "fact": 1,
    "erf": 1,
    "pow": 2,
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


def _tokenize(source: str):
    tokens = []
    pos = 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ExprSyntaxError(
                f"unexpected character {source[pos]!r}",
                pos,
                ("number", "identifier", "operator"),
            )
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        tokens.append((m.lastgroup, m.group(), m.start()))
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0
        self.depth = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, text, offset = self.peek()
        if kind != "op" or text != op:
            raise ExprSyntaxError(f"expected {op!r}", offset, (op,))
        return self.advance()

    def _enter(self, offset: int):
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise ExprSyntaxError("expression too deeply nested", offset, ())

    def _leave(self):
        self.depth -= 1

    def parse_expr(self) -> ExprNode:
        kind, text, offset = self.peek()
        self._enter(offset)
        try:
            node = self.parse_term()
            while True:
                kind, text, _ = self.peek()
                if kind == "op" and text in "+-":
                    self.advance()
                    node = BinaryOp(text, node, self.parse_term())
                else:
                    return node
        finally:
            self._leave()

    def parse_term(self) -> ExprNode:
        node = self.parse_factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                node = BinaryOp(text, node, self.parse_factor())
            else:
                return node

    def parse_factor(self) -> ExprNode:
        kind, text, offset = self.peek()
        if kind == "op" and text == "-":
            self._enter(offset)
            try:
                self.advance()
                return UnaryNeg(self.parse_factor())
            finally:
                self._leave()
        return self.parse_power()

    def parse_power(self) -> ExprNode:
        base = self.parse_primary()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            # Right-associative; the exponent may not start with a bare
            # unary minus (parenthesise it instead).
            return BinaryOp("^", base, self.parse_power())
        return base

    def parse_primary(self) -> ExprNode:
        kind, text, offset = self.advance()
        if kind == "number":
            return Constant(float(text))
        if kind == "ident":
            pk, pt, _ = self.peek()
            if pk == "op" and pt == "(":
                return self.parse_call(text, offset)
            return Variable(text)
        if kind == "op" and text == "(":
            self._enter(offset)
            try:
                node = self.parse_expr()
            finally:
                self._leave()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(
            f"expected a value, got {text!r}" if text else "unexpected end of input",
            offset,
            ("number", "identifier", "'('"),
        )

    def parse_call(self, name: str, offset: int) -> ExprNode:
        if name not in BUILTIN_FUNCTIONS:
            raise UnknownFunction(
                f"unknown function {name!r}",
                offset,
                tuple(sorted(BUILTIN_FUNCTIONS)),
            )
        self.expect_op("(")
        self._enter(offset)
        try:
            args = [self.parse_expr()]
            while True:
                kind, text, _ = self.peek()
                if kind == "op" and text == ",":
                    self.advance()
                    args.append(self.parse_expr())
                else:
                    break
        finally:
            self._leave()
        self.expect_op(")")
        arity = BUILTIN_FUNCTIONS[name]
        if len(args) != arity:
            raise ExprSyntaxError(
                f"{name} takes {arity} argument(s), got {len(args)}",
                offset,
                (),
            )
        return Call(name, tuple(args))


def parse(source: str) -> ExprNode:
    """Parse ``source`` into an expression tree.

    Raises ExprSyntaxError (with a byte offset and expected-token set) on
    malformed input and UnknownFunction for calls outside the builtin list.
    """
    if len(source.encode("utf-8", errors="replace")) > MAX_SOURCE_BYTES:
        raise ExprSyntaxError("input exceeds 64 KiB", MAX_SOURCE_BYTES, ())
    parser = _Parser(_tokenize(source))
    node = parser.parse_expr()
    kind, text, offset = parser.peek()
    if kind != "end":
        raise ExprSyntaxError(f"trailing input {text!r}", offset, ("end of input",))
    return node


def _apply_power(base: float, exponent: float) -> float:
    if base == 0.0 and exponent < 0.0:
        raise DivisionByZero("0 raised to a negative power")
    if base < 0.0 and exponent != math.floor(exponent):
        raise DomainError(
            f"negative base {base!r} with non-integer exponent {exponent!r}"
        )
    return math.pow(base, exponent)


def _call(fn: str, args: list[float]) -> float:
    if fn == "exp":
        return math.exp(args[0])
    if fn == "ln":
        if args[0] <= 0.0:
            raise DomainError(f"ln of non-positive value {args[0]!r}")
        return math.log(args[0])
    if fn == "sin":
        return math.sin(args[0])
    if fn == "cos":
        return math.cos(args[0])
    if fn == "sqrt":
        if args[0] < 0.0:
            raise DomainError(f"sqrt of negative value {args[0]!r}")
        return math.sqrt(args[0])
    if fn == "gamma":
        return specfun.gamma(args[0])
    if fn == "fact":
        return specfun.gamma(args[0] + 1.0)
    if fn == "erf":
        return specfun.erf(args[0])
    if fn == "pow":
        return _apply_power(args[0], args[1])
    raise UnknownFunction(f"unknown function {fn!r}", 0, ())


def evaluate(node: ExprNode, env: Mapping[str, float]) -> float:
    """Strict bottom-up evaluation in double precision."""
    if isinstance(node, Constant):
        return node.value
    if isinstance(node, Variable):
        try:
            return float(env[node.name])
        except KeyError:
            raise UnboundVariable(f"variable {node.name!r} is not bound") from None
    if isinstance(node, UnaryNeg):
        return -evaluate(node.child, env)
    if isinstance(node, BinaryOp):
        left = evaluate(node.left, env)
        right = evaluate(node.right, env)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            if right == 0.0:
                raise DivisionByZero(f"division by zero: {left!r} / 0")
            return left / right
        if node.op == "^":
            return _apply_power(left, right)
        raise DomainError(f"unknown operator {node.op!r}")
    if isinstance(node, Call):
        return _call(node.fn, [evaluate(a, env) for a in node.args])
    raise DomainError(f"unknown node type {type(node).__name__}")


# Printing: precedence levels for minimal parenthesisation.
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4, "atom": 5}


def _prec(node: ExprNode) -> int:
    if isinstance(node, BinaryOp):
        return _PREC[node.op]
    if isinstance(node, UnaryNeg):
        return _PREC["neg"]
    return _PREC["atom"]


def _fmt_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def to_source(node: ExprNode) -> str:
    """Render a tree back to source with minimal parentheses.

    ``to_source`` composed with ``parse`` is a fixed point: printing,
    re-parsing, and printing again yields the identical string.
    """
    if isinstance(node, Constant):
        return _fmt_number(node.value)
    if isinstance(node, Variable):
        return node.name
    if isinstance(node, UnaryNeg):
        child = to_source(node.child)
        if _prec(node.child) < _PREC["neg"]:
            child = f"({child})"
        return f"-{child}"
    if isinstance(node, Call):
        return f"{node.fn}({', '.join(to_source(a) for a in node.args)})"
    if isinstance(node, BinaryOp):
        lp, rp = _prec(node.left), _prec(node.right)
        left, right = to_source(node.left), to_source(node.right)
        if node.op == "^":
            # Right-associative; the base must be an atom, and an exponent
            # beginning with '-' must be parenthesised to re-parse.
            if lp < _PREC["atom"]:
                left = f"({left})"
            if rp < _PREC["^"] or isinstance(node.right, UnaryNeg):
                right = f"({right})"
            return f"{left}^{right}"
        prec = _PREC[node.op]
        if lp < prec:
            left = f"({left})"
        # Left-associative: a right operand at the same level needs parens.
        if rp < prec or (rp == prec and node.op in "-/"):
            right = f"({right})"
        elif rp == prec and node.op in "+*":
            # keep a+(b+c) distinguishable only when it was built that way
            if isinstance(node.right, BinaryOp) and _PREC[node.right.op] == prec:
                right = f"({right})"
        return f"{left} {node.op} {right}" if node.op in "+-" else f"{left}{node.op}{right}"
    raise DomainError(f"unknown node type {type(node).__name__}")
