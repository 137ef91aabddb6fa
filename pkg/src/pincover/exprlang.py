"""Expression language for Clifford elements and group words.

Grammar (whitespace-insensitive, juxtaposition multiplies):

    expr   := term (('+' | '-') term)*
    term   := factor ('*'? factor)*
    factor := atom ('^' int)?
    atom   := rational | 'sqrt2' | 'e'INT | 't'INT | 'w' | '(' expr ')' | '-' atom

There is no division operator; rationals are literals like 1/2.  Powers
take any integer, negative exponents via the versor inverse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .clifford import Multivector
from .pin import gen_t, omega
from .scalars import QSqrt2


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class Sqrt2Lit:
    pass


@dataclass(frozen=True)
class BasisVec:
    index: int


@dataclass(frozen=True)
class GenT:
    index: int


@dataclass(frozen=True)
class OmegaLit:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = RationalLit | Sqrt2Lit | BasisVec | GenT | OmegaLit | Neg | Add | Sub | Mul | Pow


# --- lexer -----------------------------------------------------------------


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>[-+*^/()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # int | name | op | end
    text: str
    line: int
    col: int


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            line += text.count("\n")
            if "\n" in text:
                line_start = m.start() + text.rindex("\n") + 1
        else:
            tokens.append(_Token(kind, text, line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(_Token("end", "", line, len(src) - line_start + 1))
    return tokens


# --- parser ----------------------------------------------------------------


_NAME_RE = re.compile(r"^(e|t)(\d+)$")

_ATOM_START = {"int", "name"}


class _Parser:
    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str) -> ExprSyntaxError:
        tok = self.peek()
        shown = tok.text if tok.kind != "end" else "end of input"
        return ExprSyntaxError(f"{message}, found {shown!r}" if tok.kind != "end" else f"{message} at end of input",
                               tok.line, tok.col)

    def parse_expr(self) -> Expr:
        node = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.parse_term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def _starts_factor(self) -> bool:
        tok = self.peek()
        return tok.kind in _ATOM_START or (tok.kind == "op" and tok.text == "(")

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while True:
            if self.peek().kind == "op" and self.peek().text == "*":
                self.take()
                node = Mul(node, self.parse_factor())
            elif self._starts_factor():
                node = Mul(node, self.parse_factor())
            else:
                return node

    def parse_factor(self) -> Expr:
        node = self.parse_atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            sign = 1
            if self.peek().kind == "op" and self.peek().text == "-":
                self.take()
                sign = -1
            tok = self.peek()
            if tok.kind != "int":
                raise self.error("expected an integer exponent")
            self.take()
            node = Pow(node, sign * int(tok.text))
        return node

    def parse_atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return Neg(self.parse_atom())
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.parse_expr()
            closing = self.peek()
            if not (closing.kind == "op" and closing.text == ")"):
                raise self.error("expected ')'")
            self.take()
            return node
        if tok.kind == "int":
            self.take()
            num = int(tok.text)
            if self.peek().kind == "op" and self.peek().text == "/":
                self.take()
                den_tok = self.peek()
                if den_tok.kind != "int":
                    raise self.error("expected a denominator")
                self.take()
                den = int(den_tok.text)
                if den == 0:
                    raise ExprSyntaxError("zero denominator", den_tok.line, den_tok.col)
                return RationalLit(Fraction(num, den))
            return RationalLit(Fraction(num))
        if tok.kind == "name":
            self.take()
            if tok.text == "sqrt2":
                return Sqrt2Lit()
            if tok.text == "w":
                return OmegaLit()
            m = _NAME_RE.match(tok.text)
            if m:
                index = int(m.group(2))
                if index == 0:
                    raise ExprSyntaxError("indices start at 1", tok.line, tok.col)
                return BasisVec(index) if m.group(1) == "e" else GenT(index)
            raise ExprSyntaxError(f"unknown name {tok.text!r}", tok.line, tok.col)
        raise self.error("expected an atom")


def parse(src: str) -> Expr:
    parser = _Parser(_tokenize(src))
    node = parser.parse_expr()
    if parser.peek().kind != "end":
        raise parser.error("trailing input")
    return node


# --- printer ---------------------------------------------------------------


def print_expr(e: Expr) -> str:
    """Canonical fully parenthesized form; parse(print_expr(x)) == x for
    every tree parse can produce.  A negative rational literal, which the
    grammar cannot express directly, prints as a negation and reparses as
    Neg of the positive literal (same value, different tree).
    """
    if isinstance(e, RationalLit):
        v = e.value
        body = f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
        return body if v >= 0 else f"(- {Fraction(-v).numerator}" + (f"/{v.denominator})" if v.denominator != 1 else ")")
    if isinstance(e, Sqrt2Lit):
        return "sqrt2"
    if isinstance(e, BasisVec):
        return f"e{e.index}"
    if isinstance(e, GenT):
        return f"t{e.index}"
    if isinstance(e, OmegaLit):
        return "w"
    if isinstance(e, Neg):
        return f"(- {print_expr(e.arg)})"
    if isinstance(e, Add):
        return f"({print_expr(e.left)} + {print_expr(e.right)})"
    if isinstance(e, Sub):
        return f"({print_expr(e.left)} - {print_expr(e.right)})"
    if isinstance(e, Mul):
        return f"({print_expr(e.left)} * {print_expr(e.right)})"
    if isinstance(e, Pow):
        return f"({print_expr(e.base)} ^ {e.exponent})"
    raise TypeError(f"not an expression node: {e!r}")


# --- evaluation ------------------------------------------------------------


def infer_dim(e: Expr) -> int:
    """Smallest dimension the expression fits in (at least 1)."""
    if isinstance(e, BasisVec):
        return e.index
    if isinstance(e, GenT):
        return e.index + 1
    if isinstance(e, Neg):
        return infer_dim(e.arg)
    if isinstance(e, (Add, Sub, Mul)):
        return max(infer_dim(e.left), infer_dim(e.right))
    if isinstance(e, Pow):
        return infer_dim(e.base)
    return 1


def eval_expr(e: Expr, dim: int | None = None) -> Multivector:
    n = infer_dim(e) if dim is None else dim
    if n < infer_dim(e):
        raise ValueError(f"dimension {n} too small: expression needs {infer_dim(e)}")
    return _eval(e, n)


def _eval(e: Expr, n: int) -> Multivector:
    if isinstance(e, RationalLit):
        return Multivector.scalar(n, QSqrt2(e.value))
    if isinstance(e, Sqrt2Lit):
        return Multivector.scalar(n, QSqrt2(0, 1))
    if isinstance(e, BasisVec):
        return Multivector.basis_vector(n, e.index)
    if isinstance(e, GenT):
        return gen_t(e.index, n)
    if isinstance(e, OmegaLit):
        return omega(n)
    if isinstance(e, Neg):
        return -_eval(e.arg, n)
    if isinstance(e, Add):
        return _eval(e.left, n) + _eval(e.right, n)
    if isinstance(e, Sub):
        return _eval(e.left, n) - _eval(e.right, n)
    if isinstance(e, Mul):
        return _eval(e.left, n) * _eval(e.right, n)
    if isinstance(e, Pow):
        return _eval(e.base, n) ** e.exponent
    raise TypeError(f"not an expression node: {e!r}")
