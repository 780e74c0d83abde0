"""Coefficient-function DSL: parsing, pointwise evaluation, parity classification.

Grammar (whitespace insignificant)::

    expr    := term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := '-' factor | primary ('^' INT)?
    primary := NUMBER | 't' | FUNC '(' expr ')' | '(' expr ')'
    FUNC    in {sin, cos, exp, sinh, cosh}

'^' takes a non-negative integer-constant exponent only, so parity of any
subterm stays decidable by structural rules.  Fractions such as "1/2" are
ordinary constant divisions; there is no scientific notation.
"""

from __future__ import annotations

import math
import os
import random
import re
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional, Union

from .errors import EvalError, ExprSyntaxError

__all__ = [
    "Expr",
    "Parity",
    "parse_expr",
    "eval_expr",
    "as_callable",
    "format_expr",
    "detect_parity",
    "structural_parity",
    "sampled_parity",
    "negated",
    "DEFAULT_PARITY_SEED",
    "PARITY_SAMPLE_DOMAIN",
]


# --- AST ------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    """The single free variable t."""


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int  # >= 0, enforced by the grammar


@dataclass(frozen=True)
class Call:
    func: str  # sin cos exp sinh cosh
    arg: "Node"


Node = Union[Const, Var, Neg, BinOp, Pow, Call]

FUNCTIONS = ("sin", "cos", "exp", "sinh", "cosh")


@dataclass(frozen=True)
class Expr:
    """An immutable parsed coefficient function of t."""

    ast: Node

    @property
    def source(self) -> str:
        return format_expr(self.ast)

    def __call__(self, t: float) -> float:
        return eval_expr(self, t)

    def __str__(self) -> str:
        return self.source


def negated(e: Expr) -> Expr:
    """Structurally negate: wrap the tree in a unary minus."""
    return Expr(Neg(e.ast))


# --- Tokenizer / parser ---------------------------------------------------

_NUM_RE = re.compile(r"\d+\.?\d*|\.\d+")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit() or c == ".":
            m = _NUM_RE.match(src, i)
            if m is None:
                raise ExprSyntaxError("malformed number", i)
            toks.append(("num", m.group(), i))
            i = m.end()
            continue
        if c.isalpha():
            j = i
            while j < n and src[j].isalpha():
                j += 1
            toks.append(("name", src[i:j], i))
            i = j
            continue
        if c in "+-*/^()":
            toks.append((c, c, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", i)
    return toks


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.toks = _tokenize(source)
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", len(self.source))
        self.i += 1
        return tok

    def _expect(self, kind: str):
        tok = self._peek()
        if tok is None:
            raise ExprSyntaxError(f"expected {kind!r}", len(self.source))
        if tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self._expr()
        tok = self._peek()
        if tok is not None:
            raise ExprSyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return node

    def _expr(self) -> Node:
        node = self._term()
        while (tok := self._peek()) is not None and tok[0] in "+-":
            self.i += 1
            node = BinOp(tok[0], node, self._term())
        return node

    def _term(self) -> Node:
        node = self._factor()
        while (tok := self._peek()) is not None and tok[0] in "*/":
            self.i += 1
            node = BinOp(tok[0], node, self._factor())
        return node

    def _factor(self) -> Node:
        tok = self._peek()
        if tok is not None and tok[0] == "-":
            self.i += 1
            return Neg(self._factor())
        node = self._primary()
        tok = self._peek()
        if tok is not None and tok[0] == "^":
            self.i += 1
            etok = self._peek()
            if etok is None:
                raise ExprSyntaxError("expected integer exponent", len(self.source))
            if etok[0] != "num" or "." in etok[1]:
                raise ExprSyntaxError("exponent must be an integer constant", etok[2])
            self.i += 1
            node = Pow(node, int(etok[1]))
        return node

    def _primary(self) -> Node:
        tok = self._next()
        kind, text, off = tok
        if kind == "num":
            return Const(float(text))
        if kind == "name":
            if text == "t":
                return Var()
            if text in FUNCTIONS:
                self._expect("(")
                arg = self._expr()
                self._expect(")")
                return Call(text, arg)
            raise ExprSyntaxError(f"unknown name {text!r}", off)
        if kind == "(":
            node = self._expr()
            self._expect(")")
            return node
        raise ExprSyntaxError(f"unexpected token {text!r}", off)


def parse_expr(source: str) -> Expr:
    """Parse DSL source text into an expression tree.

    Raises ExprSyntaxError (with byte offset) on unknown tokens, unbalanced
    parentheses, or a non-integer exponent.
    """
    if not source or source.isspace():
        raise ExprSyntaxError("empty expression", 0)
    return Expr(_Parser(source).parse())


# --- Evaluation -----------------------------------------------------------

def _codegen(node: Node) -> str:
    if isinstance(node, Const):
        # parens guard negative literals against Python's tighter-binding **
        return f"({node.value!r})"
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Neg):
        return f"(-{_codegen(node.arg)})"
    if isinstance(node, BinOp):
        return f"({_codegen(node.left)}{node.op}{_codegen(node.right)})"
    if isinstance(node, Pow):
        return f"({_codegen(node.base)}**{node.exponent})"
    if isinstance(node, Call):
        return f"{node.func}({_codegen(node.arg)})"
    raise TypeError(f"not an AST node: {node!r}")


@lru_cache(maxsize=None)
def _compiled(node: Node) -> Callable[[float], float]:
    ns = {name: getattr(math, name) for name in FUNCTIONS}
    args = ", ".join(f"{name}={name}" for name in FUNCTIONS)
    return eval(f"lambda t, {args}: {_codegen(node)}", ns)  # noqa: S307


def as_callable(e: Expr) -> Callable[[float], float]:
    """A fast float->float form of the expression with checked evaluation."""
    fn = _compiled(e.ast)
    isfinite = math.isfinite

    def call(t: float) -> float:
        try:
            v = fn(t)
        except ZeroDivisionError:
            raise EvalError(f"division by zero at t={t!r}") from None
        except (OverflowError, ValueError) as exc:
            raise EvalError(f"evaluation failed at t={t!r}: {exc}") from None
        if not isfinite(v):
            raise EvalError(f"non-finite value at t={t!r}")
        return v

    return call


def eval_expr(e: Expr, t: float) -> float:
    """Evaluate at t; EvalError on division by zero or non-finite results."""
    return as_callable(e)(t)


# --- Printing -------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_POW_SAFE = (Var, Call, Const)  # already printable as a primary


def _fmt_number(v: float) -> str:
    if math.copysign(1.0, v) < 0:  # includes -0.0, whose sign matters under ^
        return f"(-{_fmt_number(-v)})"
    if v.is_integer() and v < 1e16:
        return str(int(v))
    s = repr(v)
    if "e" in s or "E" in s:
        # the grammar has no scientific notation; expand exactly
        s = format(Decimal(v), "f")
    return s


def _fmt(node: Node, parent_prec: int) -> str:
    if isinstance(node, Const):
        return _fmt_number(node.value)
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Call):
        return f"{node.func}({_fmt(node.arg, 0)})"
    if isinstance(node, Neg):
        return f"-({_fmt(node.arg, 0)})"
    if isinstance(node, Pow):
        base = _fmt(node.base, 0)
        if not isinstance(node.base, _POW_SAFE):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, BinOp):
        prec = _PREC[node.op]
        left = _fmt(node.left, prec)
        # - and / are left-associative: parenthesize equal-precedence right children
        right = _fmt(node.right, prec + (node.op in "-/"))
        s = f"{left} {node.op} {right}"
        if prec < parent_prec:
            s = f"({s})"
        return s
    raise TypeError(f"not an AST node: {node!r}")


def format_expr(node: Node) -> str:
    """Render a tree back to parseable DSL source."""
    return _fmt(node, 0)


# --- Parity ---------------------------------------------------------------

class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    NEITHER = "neither"


DEFAULT_PARITY_SEED = 424243
PARITY_SAMPLE_DOMAIN = (-4.0, 4.0)

_ODD_FUNCS = frozenset({"sin", "sinh"})
_EVEN_FUNCS = frozenset({"cos", "cosh"})


def _structural(node: Node) -> Optional[Parity]:
    """Sound-but-incomplete parity rules; None means inconclusive."""
    if isinstance(node, Const):
        return Parity.EVEN
    if isinstance(node, Var):
        return Parity.ODD
    if isinstance(node, Neg):
        return _structural(node.arg)
    if isinstance(node, BinOp):
        left = _structural(node.left)
        right = _structural(node.right)
        if left is None or right is None:
            return None
        if node.op in "+-":
            return left if left is right else None
        return Parity.EVEN if left is right else Parity.ODD
    if isinstance(node, Pow):
        base = _structural(node.base)
        if base is Parity.EVEN:
            return Parity.EVEN
        if base is Parity.ODD:
            return Parity.ODD if node.exponent % 2 else Parity.EVEN
        return None
    if isinstance(node, Call):
        arg = _structural(node.arg)
        if arg is Parity.EVEN:
            return Parity.EVEN
        if arg is Parity.ODD:
            if node.func in _ODD_FUNCS:
                return Parity.ODD
            if node.func in _EVEN_FUNCS:
                return Parity.EVEN
            # exp of an odd argument: generically Neither, but the argument
            # may degenerate to zero; let sampling decide.
            return None
        return None
    raise TypeError(f"not an AST node: {node!r}")


def structural_parity(e: Expr) -> Optional[Parity]:
    return _structural(e.ast)


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("BSYM_SEED")
    if env is not None:
        return int(env)
    return DEFAULT_PARITY_SEED


def sampled_parity(
    e: Expr,
    *,
    samples: int = 64,
    seed: Optional[int] = None,
    domain: tuple[float, float] = PARITY_SAMPLE_DOMAIN,
    tol: float = 1e-10,
) -> Parity:
    """Classify by comparing f(t) with f(-t) at pseudo-random points.

    Even (checked first) requires |f(-t) - f(t)| <= tol*(1+|f(t)|) at every
    point; Odd likewise for the sum.  An identically-zero function therefore
    reports Even.
    """
    rng = random.Random(_resolve_seed(seed))
    lo, hi = domain
    fn = as_callable(e)
    even = odd = True
    for _ in range(samples):
        t = rng.uniform(lo, hi)
        ft = fn(t)
        fmt = fn(-t)
        scale = tol * (1.0 + abs(ft))
        if abs(fmt - ft) > scale:
            even = False
        if abs(fmt + ft) > scale:
            odd = False
        if not (even or odd):
            return Parity.NEITHER
    return Parity.EVEN if even else Parity.ODD


@lru_cache(maxsize=4096)
def _detect_cached(node: Node, seed: int) -> Parity:
    found = _structural(node)
    if found is not None:
        return found
    return sampled_parity(Expr(node), seed=seed)


def detect_parity(e: Expr, *, seed: Optional[int] = None) -> Parity:
    """Structural rules first; numerical sampling on [-4, 4] as fallback.

    The sampling seed defaults to DEFAULT_PARITY_SEED and may be overridden
    by the BSYM_SEED environment variable (or the seed argument).
    """
    return _detect_cached(e.ast, _resolve_seed(seed))
