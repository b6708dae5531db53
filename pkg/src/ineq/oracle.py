"""High-precision point evaluation with a rigorous error bound.

Values are double-doubles (about 32 significant digits) carried together
with an explicit bound on their absolute error.  Every arithmetic step adds
its own rounding error (relative :data:`ineq.dd.EPS`) and propagates the
error of its inputs, so ``|true - (hi + lo)| <= err_bound`` holds for the
final result.  All routines work elementwise on numpy arrays as well as on
Python floats, which keeps grid scans cheap.

The oracle deliberately shares no code path with :mod:`ineq.functions`
beyond the mathematical series themselves: it sums them by Horner's rule
in double-double, uses different argument reductions, and never fuses
``f(u)/u`` quotients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, NamedTuple, Union

import numpy as np

from . import dd
from .errors import BindingError, DomainError, NotDegenerate
from .functions import TRIG_LIMIT, Fn
from .interval import Interval, _up

__all__ = [
    "ExtendedValue",
    "GapOrder",
    "eval_fn",
    "eval_expr",
    "gap_order",
    "PI",
    "LN2",
]

Scalar = Union[float, np.ndarray]

# bound computations are themselves done in floating point; this factor
# absorbs their rounding
_SAFE = 1.0 + 2.0 ** -40

# exp/sinh/cosh accept much more than the interval layer does: the monotone
# families raise values to large powers
EXP_LIMIT = 700.0


@dataclass(frozen=True)
class ExtendedValue:
    """``hi + lo`` approximates the true value to within ``err_bound``."""

    hi: Scalar
    lo: Scalar
    err_bound: Scalar

    @staticmethod
    def exact(v: Scalar) -> "ExtendedValue":
        v = _as_float(v)
        return ExtendedValue(v, 0.0 * v, 0.0 * v)

    @staticmethod
    def from_fraction(q: Fraction | int) -> "ExtendedValue":
        q = Fraction(q)
        hi, lo = dd.from_fraction(q)
        err = float(abs(q - Fraction(hi) - Fraction(lo)))
        return ExtendedValue(hi, lo, _up(err) if err else 0.0)

    @property
    def value(self) -> Scalar:
        """Nearest double (``hi``; ``lo`` is below half an ulp of it)."""
        return self.hi

    def bounds(self) -> tuple[Scalar, Scalar]:
        """Doubles ``(a, b)`` with ``a <= true value <= b``."""
        lo_part = self.lo - self.err_bound
        hi_part = self.lo + self.err_bound
        a = np.nextafter(self.hi + np.nextafter(lo_part, -np.inf), -np.inf)
        b = np.nextafter(self.hi + np.nextafter(hi_part, np.inf), np.inf)
        a = np.minimum(a, self.hi)
        b = np.maximum(b, self.hi)
        if np.ndim(a) == 0:
            return float(a), float(b)
        return a, b

    def interval(self) -> Interval:
        a, b = self.bounds()
        return Interval(a, b)

    def to_fraction(self) -> Fraction:
        return dd.to_fraction(self.hi, self.lo)

    def __float__(self) -> float:
        return float(self.hi)

    def __getitem__(self, idx) -> "ExtendedValue":
        return ExtendedValue(self.hi[idx], self.lo[idx], self.err_bound[idx])

    # arithmetic --------------------------------------------------------
    def __neg__(self) -> "ExtendedValue":
        return ExtendedValue(-self.hi, -self.lo, self.err_bound)

    def __add__(self, o) -> "ExtendedValue":
        o = _lift(o)
        h, l = dd.add(self.hi, self.lo, o.hi, o.lo)
        return ExtendedValue(h, l, _round_err(self.err_bound + o.err_bound, h))

    __radd__ = __add__

    def __sub__(self, o) -> "ExtendedValue":
        return self + (-_lift(o))

    def __rsub__(self, o) -> "ExtendedValue":
        return _lift(o) - self

    def __mul__(self, o) -> "ExtendedValue":
        o = _lift(o)
        h, l = dd.mul(self.hi, self.lo, o.hi, o.lo)
        ea, eb = self.err_bound, o.err_bound
        prop = _mag(self) * eb + _mag(o) * ea + ea * eb
        return ExtendedValue(h, l, _round_err(prop, h))

    __rmul__ = __mul__

    def __truediv__(self, o) -> "ExtendedValue":
        o = _lift(o)
        den = _mag_lower(o)
        if np.any(den <= 0.0):
            raise DomainError("division by a value not bounded away from zero")
        h, l = dd.div(self.hi, self.lo, o.hi, o.lo)
        prop = (self.err_bound + (np.abs(h) + np.abs(l)) * o.err_bound) / den
        return ExtendedValue(h, l, _round_err(prop, h))

    def __rtruediv__(self, o) -> "ExtendedValue":
        return _lift(o) / self

    def scale2(self, e) -> "ExtendedValue":
        """Exact multiplication by ``2**e`` (``e`` may be an integer array)."""
        return ExtendedValue(np.ldexp(self.hi, e), np.ldexp(self.lo, e), np.ldexp(self.err_bound, e))

    def sqrt(self) -> "ExtendedValue":
        if np.any(self.hi <= 0.0) or np.any(_mag_lower(self) <= 0.0):
            raise DomainError("sqrt of a value not bounded away from zero")
        h, l = dd.sqrt(self.hi, self.lo)
        prop = self.err_bound / np.sqrt(_mag_lower(self))
        return ExtendedValue(h, l, _round_err(prop, h))


def _as_float(v):
    if isinstance(v, np.ndarray):
        return v.astype(float)
    return float(v)


def _lift(o) -> ExtendedValue:
    if isinstance(o, ExtendedValue):
        return o
    if isinstance(o, (Fraction, int)) and not isinstance(o, bool):
        return ExtendedValue.from_fraction(o)
    if isinstance(o, (float, np.ndarray, np.floating)):
        return ExtendedValue.exact(o)
    raise TypeError(f"cannot combine ExtendedValue with {type(o).__name__}")


def _mag(a: ExtendedValue):
    return np.abs(a.hi) + np.abs(a.lo)


def _mag_lower(a: ExtendedValue):
    """Lower bound on |true value| (may be <= 0 if zero is not excluded)."""
    return (np.abs(a.hi) - np.abs(a.lo) - a.err_bound) * (1.0 - 2.0 ** -40)


# absolute slack for results whose low word falls into the subnormal range
_TINY = 2.0 ** -1060


def _round_err(prop, h):
    return (prop + dd.EPS * np.abs(h) + _TINY) * _SAFE


def _where(mask, a: ExtendedValue, b: ExtendedValue) -> ExtendedValue:
    return ExtendedValue(
        np.where(mask, a.hi, b.hi), np.where(mask, a.lo, b.lo), np.where(mask, a.err_bound, b.err_bound)
    )


def _squeeze(v: ExtendedValue, scalar: bool) -> ExtendedValue:
    if not scalar:
        return v
    return ExtendedValue(float(v.hi), float(v.lo), float(v.err_bound))


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

# pi = 3.14159265358979323846264338327950288419716939937510...
_PI_Q = Fraction("3.14159265358979323846264338327950288419716939937510")
# ln 2 = 0.69314718055994530941723212145817656807550013436026...
_LN2_Q = Fraction("0.69314718055994530941723212145817656807550013436026")


def _const_with_slack(q: Fraction) -> ExtendedValue:
    v = ExtendedValue.from_fraction(q)
    # the decimal literal itself is accurate to 1e-50
    return ExtendedValue(v.hi, v.lo, v.err_bound + 1e-49)


PI = _const_with_slack(_PI_Q)
LN2 = _const_with_slack(_LN2_Q)
_HALF_PI = ExtendedValue(PI.hi / 2, PI.lo / 2, PI.err_bound / 2)


# ---------------------------------------------------------------------------
# series by Horner's rule
# ---------------------------------------------------------------------------

_MAX_TERMS = 90
_TAIL_TOL = 2.0 ** -135


class _Series(NamedTuple):
    coeffs: tuple[tuple[float, float, float], ...]  # (hi, lo, err) of each c_n
    abs_c: tuple[float, ...]  # |c_n| rounded up
    ratio_sup: Callable[[int], float]  # >= sup_{m >= n} |c_{m+1} / c_m|


def _make_series(coef: Callable[[int], Fraction], ratio_sup: Callable[[int], float]) -> _Series:
    cs, mags = [], []
    for n in range(_MAX_TERMS + 1):
        q = coef(n)
        v = ExtendedValue.from_fraction(q)
        cs.append((v.hi, v.lo, v.err_bound))
        m = float(abs(q))
        mags.append(_up(m) if m else 0.0)
    return _Series(tuple(cs), tuple(mags), ratio_sup)


_fact = math.factorial
# sin x = x * S_SIN(x^2), cos x = S_COS(x^2), and the hyperbolic analogues
_S_SIN = _make_series(lambda n: Fraction((-1) ** n, _fact(2 * n + 1)), lambda n: 1.0 / ((2 * n + 2) * (2 * n + 3)))
_S_COS = _make_series(lambda n: Fraction((-1) ** n, _fact(2 * n)), lambda n: 1.0 / ((2 * n + 1) * (2 * n + 2)))
_S_SINH = _make_series(lambda n: Fraction(1, _fact(2 * n + 1)), lambda n: 1.0 / ((2 * n + 2) * (2 * n + 3)))
_S_COSH = _make_series(lambda n: Fraction(1, _fact(2 * n)), lambda n: 1.0 / ((2 * n + 1) * (2 * n + 2)))
_S_EXP = _make_series(lambda n: Fraction(1, _fact(n)), lambda n: 1.0 / (n + 1))
# arctanh z = z * S_ATANH(z^2), arctan z = z * S_ATAN(z^2)
_S_ATANH = _make_series(lambda n: Fraction(1, 2 * n + 1), lambda n: 1.0)
_S_ATAN = _make_series(lambda n: Fraction((-1) ** n, 2 * n + 1), lambda n: 1.0)


def _horner(s: _Series, y: ExtendedValue) -> ExtendedValue:
    ymax = float(np.max(np.abs(y.hi) + np.abs(y.lo) + y.err_bound))
    n = 1
    while True:
        if n >= _MAX_TERMS:
            raise DomainError("series argument too large for the oracle")
        r = s.ratio_sup(n) * ymax
        term = s.abs_c[n] * ymax ** n if ymax else 0.0
        if r <= 0.5 and term <= _TAIL_TOL:
            break
        n += 1
    # sum_{m >= n} |c_m| y^m <= term / (1 - r) <= 2 * term
    tail = 2.0 * term * _SAFE
    h, l, e = s.coeffs[n - 1]
    acc = ExtendedValue(h + 0.0 * y.hi, l + 0.0 * y.hi, e + 0.0 * y.hi)
    for k in range(n - 2, -1, -1):
        h, l, e = s.coeffs[k]
        acc = acc * y + ExtendedValue(h, l, e)
    return ExtendedValue(acc.hi, acc.lo, acc.err_bound + tail)


# ---------------------------------------------------------------------------
# elementary functions
# ---------------------------------------------------------------------------


def _max_abs(x: ExtendedValue) -> float:
    return float(np.max(np.abs(x.hi) + np.abs(x.lo) + x.err_bound))


def _require(cond, msg: str) -> None:
    if not np.all(cond):
        raise DomainError(msg)


def _sq(x: ExtendedValue) -> ExtendedValue:
    return x * x


def _sin(x):
    _require(_max_abs(x) <= TRIG_LIMIT, "sin: |x| > 4")
    return x * _horner(_S_SIN, _sq(x))


def _cos(x):
    _require(_max_abs(x) <= TRIG_LIMIT, "cos: |x| > 4")
    return _horner(_S_COS, _sq(x))


def _exp(x):
    m = _max_abs(x)
    _require(m <= EXP_LIMIT, "exp: |x| > 700")
    s = max(0, math.ceil(math.log2(m / 0.5))) if m > 0.5 else 0
    r = _horner(_S_EXP, x.scale2(-s))
    for _ in range(s):
        r = r * r
    return r


def _sinh_cosh(x, odd: bool):
    m = _max_abs(x)
    _require(m <= EXP_LIMIT, "sinh/cosh: |x| > 700")
    small = np.abs(x.hi) <= 0.5
    xs = _where(small, x, ExtendedValue.exact(0.0 * x.hi))
    near = xs * _horner(_S_SINH, _sq(xs)) if odd else _horner(_S_COSH, _sq(xs))
    if np.all(small):
        return near
    xb = _where(small, ExtendedValue.exact(1.0 + 0.0 * x.hi), x)
    e = _exp(xb)
    ei = 1.0 / e
    far = ((e - ei) if odd else (e + ei)).scale2(-1)
    return _where(small, near, far)


def _log(x):
    _require(_mag_lower(x) > 0.0, "log: argument not bounded away from zero")
    _require(x.hi > 0.0, "log: nonpositive argument")
    _, e = np.frexp(x.hi)
    m = x.scale2(-e)  # m in [1/2, 1)
    low = m.hi < math.sqrt(0.5)
    e = np.where(low, e - 1, e)
    m = x.scale2(-e)  # m in [sqrt(1/2), sqrt(2))
    t = (m - 1.0) / (m + 1.0)
    r = (t * _horner(_S_ATANH, _sq(t))).scale2(1)
    return r + LN2 * ExtendedValue.exact(np.asarray(e, dtype=float) if np.ndim(e) else float(e))


def _atan(x):
    _require(np.all(np.isfinite(x.hi)), "arctan: non-finite argument")
    big = np.abs(x.hi) > 1.0
    safe = _where(big, x, ExtendedValue.exact(1.0 + 0.0 * x.hi))
    z = _where(big, 1.0 / safe, x)
    # two half-angle steps: |z| <= 1 -> |t| <= tan(pi/16)
    t = z
    for _ in range(2):
        t = t / (1.0 + (1.0 + _sq(t)).sqrt())
    r = (t * _horner(_S_ATAN, _sq(t))).scale2(2)
    if not np.any(big):
        return r
    sgn = np.where(x.hi > 0.0, 1.0, -1.0)
    flipped = _HALF_PI * ExtendedValue.exact(sgn) - r
    return _where(big, flipped, r)


def _atanh(x):
    _require(_max_abs(x) < 1.0, "arctanh: |x| >= 1")
    small = np.abs(x.hi) <= 0.1
    xs = _where(small, x, ExtendedValue.exact(0.0 * x.hi))
    near = xs * _horner(_S_ATANH, _sq(xs))
    if np.all(small):
        return near
    xb = _where(small, ExtendedValue.exact(0.5 + 0.0 * x.hi), x)
    far = _log((1.0 + xb) / (1.0 - xb)).scale2(-1)
    return _where(small, near, far)


def _asin(x):
    _require(_max_abs(x) < 1.0, "arcsin: |x| >= 1")
    return _atan(x / ((1.0 - x) * (1.0 + x)).sqrt())


def _asinh(x):
    _require(np.all(np.isfinite(x.hi)), "arcsinh: non-finite argument")
    return _atanh(x / (1.0 + _sq(x)).sqrt())


def _tan(x):
    return _sin(x) / _cos(x)


def _tanh(x):
    return _sinh_cosh(x, True) / _sinh_cosh(x, False)


def _odd(f):
    # evaluate on |x| and restore the sign, so f(-x) == -f(x) bit for bit
    def g(x):
        neg = x.hi < 0.0
        r = f(_where(neg, -x, x))
        return _where(neg, -r, r)

    return g


def _even(f):
    def g(x):
        return f(_where(x.hi < 0.0, -x, x))

    return g


_IMPL = {
    Fn.SIN: _odd(_sin),
    Fn.COS: _even(_cos),
    Fn.SINH: _odd(lambda x: _sinh_cosh(x, True)),
    Fn.COSH: _even(lambda x: _sinh_cosh(x, False)),
    Fn.TAN: _odd(_tan),
    Fn.TANH: _odd(_tanh),
    Fn.EXP: _exp,
    Fn.LOG: _log,
    Fn.ARCSIN: _odd(_asin),
    Fn.ARCTAN: _odd(_atan),
    Fn.ARCSINH: _odd(_asinh),
    Fn.ARCTANH: _odd(_atanh),
}


def _to_ev(x) -> tuple[ExtendedValue, bool]:
    if isinstance(x, ExtendedValue):
        return x, np.ndim(x.hi) == 0
    scalar = np.ndim(x) == 0
    if scalar:
        v = float(x)
    else:
        v = np.asarray(x, dtype=float)
    _require(np.isfinite(v), "non-finite argument")
    return ExtendedValue.exact(v), scalar


def eval_fn(fn: Fn | str, x) -> ExtendedValue:
    """``fn(x)`` for a double, an array of doubles, or an :class:`ExtendedValue`."""
    fn = Fn(fn)
    v, scalar = _to_ev(x)
    return _squeeze(_IMPL[fn](v), scalar)


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _rational(q: Fraction) -> ExtendedValue:
    return ExtendedValue.from_fraction(q)


def _pow_int(b: ExtendedValue, n: int) -> ExtendedValue:
    result = None
    while n:
        if n & 1:
            result = b if result is None else result * b
        n >>= 1
        if n:
            b = b * b
    return result if result is not None else ExtendedValue.exact(1.0 + 0.0 * b.hi)


def eval_expr(e, bindings: Mapping[str, object]) -> ExtendedValue:
    """Evaluate an :class:`~ineq.expr.Expr` at a point (or elementwise on arrays)."""
    shape_probe = [np.ndim(v) for v in bindings.values()]
    scalar = all(d == 0 for d in shape_probe)
    env = {k: _to_ev(v)[0] for k, v in bindings.items()}
    return _squeeze(_eval(e, env), scalar)


def _eval(e, env: Mapping[str, ExtendedValue]) -> ExtendedValue:
    op = e.op
    if op == "var":
        try:
            return env[e.arg]
        except KeyError:
            raise BindingError(f"variable {e.arg!r} is not bound") from None
    if op == "const":
        return _rational(e.arg)
    if op == "pi":
        return PI
    if op in ("add", "sub", "mul", "div"):
        a = _eval(e.args[0], env)
        b = _eval(e.args[1], env)
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        return a / b
    a = _eval(e.args[0], env)
    if op == "pow_int":
        return _pow_int(a, e.arg)
    if op == "pow_real":
        p = e.arg
        _require(a.hi > 0.0, "real power of a nonpositive base")
        if p == Fraction(1, 2):
            return a.sqrt()
        if p == Fraction(-1, 2):
            return 1.0 / a.sqrt()
        return _exp(_rational(p) * _log(a))
    return _IMPL[e.arg](a)


# ---------------------------------------------------------------------------
# degeneracy order at an endpoint
# ---------------------------------------------------------------------------


class GapOrder(NamedTuple):
    order: int
    slope: float
    residual: float


def gap_order(rec, endpoint: str, var: str = "x") -> GapOrder:
    """Estimate ``k`` with ``gap ~ c * |v - endpoint|**k``.

    Samples ``endpoint -/+ 2**-i * w`` for ``i = 8..20`` (``w`` the domain
    width), fits a least-squares line to ``log |gap|`` against ``log`` of
    the offset and rounds its slope.  ``residual`` is the distance from the
    slope to that integer.  Other variables sit at their domain midpoints.
    """
    if endpoint not in ("lower", "upper"):
        raise ValueError("endpoint must be 'lower' or 'upper'")
    if rec.expected_order(var, endpoint) is None:
        raise NotDegenerate(f"{rec.id}: {var} {endpoint} endpoint is not flagged degenerate")
    lo, hi = rec.domain_floats(var)
    w = hi - lo
    offsets = np.ldexp(w, -np.arange(8, 21))
    pts = lo + offsets if endpoint == "lower" else hi - offsets
    bindings = {v: np.full_like(pts, 0.5 * (a + b)) for v, (a, b) in rec.domain_float_map().items()}
    bindings[var] = pts
    g = eval_expr(rec.gap, bindings)
    gaps = np.abs(g.hi + g.lo)
    slope = float(np.polyfit(np.log(offsets), np.log(gaps), 1)[0])
    k = int(round(slope))
    return GapOrder(k, slope, abs(slope - k))
