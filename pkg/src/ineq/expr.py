"""Expression trees shared by the interval evaluator and the oracle.

Nodes are immutable and compare structurally.  Python operators build
trees, so ``(2 + cos(x)) / 3`` is an :class:`Expr`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .functions import Fn

__all__ = [
    "Expr",
    "const",
    "var",
    "PI",
    "sqrt",
    "rpow",
    "apply",
    "sin",
    "cos",
    "sinh",
    "cosh",
    "tan",
    "tanh",
    "exp",
    "log",
    "arcsin",
    "arctan",
    "arcsinh",
    "arctanh",
]

_BINARY = {"add": "+", "sub": "-", "mul": "*", "div": "/"}
_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2}

Operand = Union["Expr", int, Fraction]


@dataclass(frozen=True)
class Expr:
    """One node: ``op`` in const, pi, var, add, sub, mul, div, pow_int,
    pow_real, apply.  ``arg`` holds the node payload: the rational value,
    the variable name, the integer or rational exponent, or the :class:`Fn`.
    """

    op: str
    args: tuple["Expr", ...] = ()
    arg: object = None

    def __post_init__(self):
        arity = {"const": 0, "pi": 0, "var": 0, "pow_int": 1, "pow_real": 1, "apply": 1}
        want = arity.get(self.op, 2)
        if self.op not in arity and self.op not in _BINARY:
            raise ValueError(f"unknown node kind {self.op!r}")
        if len(self.args) != want:
            raise ValueError(f"{self.op} takes {want} children, got {len(self.args)}")
        if self.op == "pow_int" and not (isinstance(self.arg, int) and self.arg >= 0):
            raise ValueError("pow_int needs a nonnegative integer exponent")

    # building ----------------------------------------------------------
    def __add__(self, o: Operand) -> "Expr":
        return Expr("add", (self, _lift(o)))

    def __radd__(self, o: Operand) -> "Expr":
        return Expr("add", (_lift(o), self))

    def __sub__(self, o: Operand) -> "Expr":
        return Expr("sub", (self, _lift(o)))

    def __rsub__(self, o: Operand) -> "Expr":
        return Expr("sub", (_lift(o), self))

    def __mul__(self, o: Operand) -> "Expr":
        return Expr("mul", (self, _lift(o)))

    def __rmul__(self, o: Operand) -> "Expr":
        return Expr("mul", (_lift(o), self))

    def __truediv__(self, o: Operand) -> "Expr":
        return Expr("div", (self, _lift(o)))

    def __rtruediv__(self, o: Operand) -> "Expr":
        return Expr("div", (_lift(o), self))

    def __neg__(self) -> "Expr":
        return Expr("mul", (const(-1), self))

    def __pow__(self, p: Union[int, Fraction]) -> "Expr":
        if isinstance(p, int) and p >= 0:
            return Expr("pow_int", (self,), p)
        return rpow(self, p)

    # inspection --------------------------------------------------------
    def variables(self) -> frozenset[str]:
        if self.op == "var":
            return frozenset({self.arg})
        out: frozenset[str] = frozenset()
        for a in self.args:
            out |= a.variables()
        return out

    def is_constant(self) -> bool:
        return not self.variables()

    def to_sexpr(self) -> str:
        """Prefix form, e.g. ``(/ (sin x) x)``."""
        if self.op == "const":
            return _fmt_q(self.arg)
        if self.op == "pi":
            return "pi"
        if self.op == "var":
            return self.arg
        if self.op in _BINARY:
            a, b = self.args
            return f"({_BINARY[self.op]} {a.to_sexpr()} {b.to_sexpr()})"
        if self.op == "pow_int":
            return f"(^ {self.args[0].to_sexpr()} {self.arg})"
        if self.op == "pow_real":
            return f"(rpow {self.args[0].to_sexpr()} {_fmt_q(self.arg)})"
        return f"({self.arg.value} {self.args[0].to_sexpr()})"

    def __str__(self) -> str:
        return _infix(self, 0)


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _infix(e: Expr, parent: int) -> str:
    if e.op in ("const", "pi", "var"):
        s = e.to_sexpr()
        return f"({s})" if e.op == "const" and e.arg < 0 else s
    if e.op in _BINARY:
        p = _PREC[e.op]
        a, b = e.args
        right = p + 1 if e.op in ("sub", "div") else p
        s = f"{_infix(a, p)} {_BINARY[e.op]} {_infix(b, right)}"
        return f"({s})" if p < parent else s
    if e.op == "pow_int":
        return f"{_infix(e.args[0], 3)}^{e.arg}"
    if e.op == "pow_real":
        return f"{_infix(e.args[0], 3)}^({_fmt_q(e.arg)})"
    return f"{e.arg.value}({_infix(e.args[0], 0)})"


def _lift(o: Operand) -> Expr:
    if isinstance(o, Expr):
        return o
    if isinstance(o, (int, Fraction)):
        return const(o)
    raise TypeError(f"cannot use {type(o).__name__} in an expression; use Fraction for rationals")


def const(q: Union[int, Fraction, str]) -> Expr:
    return Expr("const", (), Fraction(q))


def var(name: str) -> Expr:
    return Expr("var", (), name)


PI = Expr("pi")


def rpow(e: Expr, p: Union[Fraction, int, str]) -> Expr:
    """``e ** p`` for rational ``p``; ``e`` must be positive where evaluated."""
    return Expr("pow_real", (_lift(e),), Fraction(p))


def sqrt(e: Operand) -> Expr:
    return rpow(_lift(e), Fraction(1, 2))


def apply(fn: Union[Fn, str], e: Operand) -> Expr:
    return Expr("apply", (_lift(e),), Fn(fn))


def sin(e: Operand) -> Expr:
    return apply(Fn.SIN, e)


def cos(e: Operand) -> Expr:
    return apply(Fn.COS, e)


def sinh(e: Operand) -> Expr:
    return apply(Fn.SINH, e)


def cosh(e: Operand) -> Expr:
    return apply(Fn.COSH, e)


def tan(e: Operand) -> Expr:
    return apply(Fn.TAN, e)


def tanh(e: Operand) -> Expr:
    return apply(Fn.TANH, e)


def exp(e: Operand) -> Expr:
    return apply(Fn.EXP, e)


def log(e: Operand) -> Expr:
    return apply(Fn.LOG, e)


def arcsin(e: Operand) -> Expr:
    return apply(Fn.ARCSIN, e)


def arctan(e: Operand) -> Expr:
    return apply(Fn.ARCTAN, e)


def arcsinh(e: Operand) -> Expr:
    return apply(Fn.ARCSINH, e)


def arctanh(e: Operand) -> Expr:
    return apply(Fn.ARCTANH, e)
