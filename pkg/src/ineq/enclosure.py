"""Interval evaluation of expression trees, with optional gradients.

An :class:`~ineq.expr.Expr` is compiled once into nested closures.  Two
rewrites happen during compilation:

* ``f(u) / u`` and ``u / f(u)`` for odd ``f`` in :data:`~ineq.functions.CARDINAL`
  become the cardinal quotient (or its reciprocal), evaluated without the
  removable singularity at ``u = 0``;
* constant subtrees are folded into a single certified interval.

The gradient variant carries an interval enclosure of every partial
derivative along with the value (forward mode).  The prover uses it for
monotonicity tests and the mean-value form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from .errors import BindingError, DomainError
from .expr import Expr
from .functions import CARDINAL, DEFAULT_ORDER, Fn, enclose, enclose_cardinal, enclose_cardinal_deriv
from .interval import PI, Interval, pow_int, sqrt_iv

__all__ = ["eval_expr_interval", "compile_value", "compile_grad", "Dual"]

_HALF = Fraction(1, 2)
_ONE = Interval(1.0)
_ZERO = Interval(0.0)

ValueFn = Callable[[Mapping[str, Interval], int], Interval]


# ---------------------------------------------------------------------------
# pattern helpers
# ---------------------------------------------------------------------------


def _cardinal_of(e: Expr):
    """Return ``(fn, u, reciprocal)`` if ``e`` is ``f(u)/u`` or ``u/f(u)``."""
    if e.op != "div":
        return None
    a, b = e.args
    if a.op == "apply" and a.arg in CARDINAL and a.args[0] == b:
        return a.arg, b, False
    if b.op == "apply" and b.arg in CARDINAL and b.args[0] == a:
        return b.arg, a, True
    return None


@lru_cache(maxsize=None)
def _const_iv(q: Fraction) -> Interval:
    return Interval.from_fraction(q)


def _rpow(u: Interval, p: Fraction, n: int) -> Interval:
    if u.lo <= 0.0:
        raise DomainError(f"real power of {u}, which is not positive")
    if p == _HALF:
        return sqrt_iv(u)
    if p == -_HALF:
        return 1.0 / sqrt_iv(u)
    return enclose(Fn.EXP, _const_iv(p) * enclose(Fn.LOG, u, n), n)


_BINARY = {
    "add": Interval.__add__,
    "sub": Interval.__sub__,
    "mul": Interval.__mul__,
    "div": Interval.__truediv__,
}


# ---------------------------------------------------------------------------
# values
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def compile_value(e: Expr) -> ValueFn:
    """Closure ``f(env, order) -> Interval`` enclosing ``e`` over ``env``."""
    if e.is_constant():
        cache: dict[int, Interval] = {}

        def folded(env, n, _e=e):
            v = cache.get(n)
            if v is None:
                v = cache[n] = _value_raw(_e)(env, n)
            return v

        return folded
    return _value_raw(e)


def _value_raw(e: Expr) -> ValueFn:
    op = e.op
    if op == "const":
        v = _const_iv(e.arg)
        return lambda env, n: v
    if op == "pi":
        return lambda env, n: PI
    if op == "var":
        name = e.arg
        return lambda env, n: env[name]
    card = _cardinal_of(e)
    if card is not None:
        fn, u, recip = card
        fu = compile_value(u)
        if recip:
            return lambda env, n: _ONE / enclose_cardinal(fn, fu(env, n), n)
        return lambda env, n: enclose_cardinal(fn, fu(env, n), n)
    if op in _BINARY:
        f = _BINARY[op]
        fa = compile_value(e.args[0])
        fb = compile_value(e.args[1])
        return lambda env, n: f(fa(env, n), fb(env, n))
    fa = compile_value(e.args[0])
    if op == "pow_int":
        k = e.arg
        return lambda env, n: pow_int(fa(env, n), k)
    if op == "pow_real":
        p = e.arg
        return lambda env, n: _rpow(fa(env, n), p, n)
    fn = e.arg
    return lambda env, n: enclose(fn, fa(env, n), n)


def eval_expr_interval(e: Expr, env: Mapping[str, Interval], order: int = DEFAULT_ORDER) -> Interval:
    """Interval containing ``{e(v) : v in env}``.

    Unbound variables raise :class:`~ineq.errors.BindingError`; domain
    problems and zero divisors propagate as raised by the kernel.
    """
    missing = e.variables() - set(env)
    if missing:
        raise BindingError(f"unbound variables {sorted(missing)}")
    env = {k: Interval.coerce(v) for k, v in env.items()}
    return compile_value(e)(env, order)


# ---------------------------------------------------------------------------
# value + gradient
# ---------------------------------------------------------------------------


class Dual:
    """Interval value together with interval partial derivatives."""

    __slots__ = ("v", "d")

    def __init__(self, v: Interval, d: tuple[Interval, ...]):
        self.v = v
        self.d = d

    def scaled(self, v: Interval, k: Interval) -> "Dual":
        return Dual(v, tuple(k * g for g in self.d))


def _d_add(a: Dual, b: Dual) -> Dual:
    return Dual(a.v + b.v, tuple(x + y for x, y in zip(a.d, b.d)))


def _d_sub(a: Dual, b: Dual) -> Dual:
    return Dual(a.v - b.v, tuple(x - y for x, y in zip(a.d, b.d)))


def _d_mul(a: Dual, b: Dual) -> Dual:
    return Dual(a.v * b.v, tuple(x * b.v + a.v * y for x, y in zip(a.d, b.d)))


def _d_div(a: Dual, b: Dual) -> Dual:
    q = a.v / b.v
    return Dual(q, tuple((x - q * y) / b.v for x, y in zip(a.d, b.d)))


_D_BINARY = {"add": _d_add, "sub": _d_sub, "mul": _d_mul, "div": _d_div}


def _fn_deriv(fn: Fn, u: Interval, fu: Interval, n: int) -> Interval:
    if fn is Fn.SIN:
        return enclose(Fn.COS, u, n)
    if fn is Fn.COS:
        return -enclose(Fn.SIN, u, n)
    if fn is Fn.SINH:
        return enclose(Fn.COSH, u, n)
    if fn is Fn.COSH:
        return enclose(Fn.SINH, u, n)
    if fn is Fn.EXP:
        return fu
    if fn is Fn.LOG:
        return _ONE / u
    if fn is Fn.TAN:
        return _ONE + pow_int(fu, 2)
    if fn is Fn.TANH:
        return _ONE - pow_int(fu, 2)
    if fn is Fn.ARCSIN:
        return _ONE / sqrt_iv(_ONE - pow_int(u, 2))
    if fn is Fn.ARCTAN:
        return _ONE / (_ONE + pow_int(u, 2))
    if fn is Fn.ARCSINH:
        return _ONE / sqrt_iv(_ONE + pow_int(u, 2))
    if fn is Fn.ARCTANH:
        return _ONE / (_ONE - pow_int(u, 2))
    raise ValueError(fn)  # pragma: no cover


GradFn = Callable[[Mapping[str, Dual], int], Dual]


@lru_cache(maxsize=None)
def compile_grad(e: Expr, names: tuple[str, ...]) -> GradFn:
    """Closure ``f(env, order) -> Dual`` with partials in the order of ``names``."""
    zero = tuple(_ZERO for _ in names)
    op = e.op
    if e.is_constant():
        fv = compile_value(e)
        return lambda env, n: Dual(fv(env, n), zero)
    if op == "var":
        name = e.arg
        return lambda env, n: env[name]
    card = _cardinal_of(e)
    if card is not None:
        fn, u, recip = card
        gu = compile_grad(u, names)

        def cardinal(env, n):
            du = gu(env, n)
            c = enclose_cardinal(fn, du.v, n)
            dc = enclose_cardinal_deriv(fn, du.v, n)
            if recip:
                r = _ONE / c
                return du.scaled(r, -(dc * pow_int(r, 2)))
            return du.scaled(c, dc)

        return cardinal
    if op in _D_BINARY:
        f = _D_BINARY[op]
        ga = compile_grad(e.args[0], names)
        gb = compile_grad(e.args[1], names)
        return lambda env, n: f(ga(env, n), gb(env, n))
    ga = compile_grad(e.args[0], names)
    if op == "pow_int":
        k = e.arg

        def pint(env, n):
            du = ga(env, n)
            if k == 0:
                return Dual(pow_int(du.v, 0), zero)
            return du.scaled(pow_int(du.v, k), _const_iv(Fraction(k)) * pow_int(du.v, k - 1))

        return pint
    if op == "pow_real":
        p = e.arg
        pc = _const_iv(p)

        def preal(env, n):
            du = ga(env, n)
            v = _rpow(du.v, p, n)
            return du.scaled(v, pc * v / du.v)

        return preal
    fn = e.arg

    def app(env, n):
        du = ga(env, n)
        v = enclose(fn, du.v, n)
        return du.scaled(v, _fn_deriv(fn, du.v, v, n))

    return app
