"""Rigorous enclosures of elementary functions.

All enclosures come from truncated Maclaurin series evaluated in interval
arithmetic plus an explicit bound on the omitted tail.  The series engine
keeps the intersection of every truncation it passes through, so raising the
order can only narrow a result.

``order`` always counts the number of (nonzero) series terms that are
summed, not the polynomial degree: ``sin`` at order 24 sums through
``x**47``.

Besides the twelve functions in :class:`Fn`, the module provides the
"cardinal" quotients ``f(u)/u`` for the odd functions (``sin x / x`` and
friends).  Evaluating those quotients as a single series removes the
removable singularity at ``u = 0`` that would otherwise wreck interval
evaluation near the origin.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Union

from .errors import DomainError, Unsupported
from .interval import HALF_PI, LN2, Interval, _checked, _dn, _up, hull, pow_int, sqrt_iv

__all__ = [
    "Fn",
    "FnId",
    "CARDINAL",
    "DEFAULT_ORDER",
    "enclose",
    "enclose_cardinal",
    "enclose_cardinal_deriv",
    "bernoulli",
    "tanh_coeff",
    "partial_sum",
    "remainder_bound",
]

DEFAULT_ORDER = 24
MAX_ORDER = 64

TRIG_LIMIT = 4.0
HYP_LIMIT = 16.0
# below this, odd inverse functions and their quotients use their own series
_SMALL = 0.5


class Fn(str, Enum):
    SIN = "sin"
    COS = "cos"
    SINH = "sinh"
    COSH = "cosh"
    TAN = "tan"
    TANH = "tanh"
    EXP = "exp"
    LOG = "log"
    ARCSIN = "arcsin"
    ARCTAN = "arctan"
    ARCSINH = "arcsinh"
    ARCTANH = "arctanh"

    def __str__(self) -> str:
        return self.value


FnId = Fn

# functions f with f(0) = 0 whose quotient f(u)/u has a cardinal enclosure
CARDINAL = frozenset(
    {Fn.SIN, Fn.SINH, Fn.TAN, Fn.TANH, Fn.ARCSIN, Fn.ARCTAN, Fn.ARCSINH, Fn.ARCTANH}
)

IntervalLike = Union[Interval, float]

_ONE = Interval(1.0)


# ---------------------------------------------------------------------------
# series engine
# ---------------------------------------------------------------------------

def _ratio_table(num: Callable[[int], int], den: Callable[[int], int]) -> list[tuple[float, float]]:
    """Outward enclosures of num(n)/den(n) for n = 0..MAX_ORDER+1 (index 0 unused)."""
    out = [(0.0, 0.0)]
    for n in range(1, MAX_ORDER + 2):
        iv = Interval.from_fraction(Fraction(num(n), den(n)))
        out.append((iv.lo, iv.hi))
    return out


# term_n / term_{n-1} = y * r_n
_R_SIN = _ratio_table(lambda n: 1, lambda n: (2 * n) * (2 * n + 1))
_R_COS = _ratio_table(lambda n: 1, lambda n: (2 * n - 1) * (2 * n))
_R_EXP = _ratio_table(lambda n: 1, lambda n: n)
_R_ATANH = _ratio_table(lambda n: 2 * n - 1, lambda n: 2 * n + 1)
_R_ASINH = _ratio_table(lambda n: (2 * n - 1) ** 2, lambda n: (2 * n) * (2 * n + 1))
# derivative series of the cardinal functions (see enclose_cardinal_deriv)
_R_DSINC = _ratio_table(lambda n: 1, lambda n: (2 * n) * (2 * n + 3))
_R_DATAN = _ratio_table(lambda n: (2 * n + 2) * (2 * n + 1), lambda n: (2 * n + 3) * (2 * n))
_R_DASINH = _ratio_table(lambda n: (2 * n + 1) ** 2, lambda n: (2 * n) * (2 * n + 3))

# e**k rounded up, k = 0..4; the rigid factor of the Lagrange remainder
_E_POW_UP = (1.0, 2.72, 7.39, 20.1, 54.6)


def _exp_up(m: float) -> float:
    if m <= 0.0:
        return 1.0
    k = math.ceil(m)
    if k < len(_E_POW_UP):
        return _E_POW_UP[k]
    return 3.0 ** k


def _series(
    y: Interval,
    t0: Interval,
    ratios: list[tuple[float, float]],
    alternating: bool,
    n_terms: int,
    tail: Callable[[int, float], float],
) -> Interval:
    """Sum t0 + t1 + ... with t_n = -+ t_{n-1} * y * r_n.

    ``tail(n, T)`` must bound the remainder after summing n terms, given an
    upper bound T on |t_n|.  The result is the intersection of all the
    truncation enclosures S_n +- tail_n for n = 1..n_terms.
    """
    if n_terms < 1 or n_terms > MAX_ORDER:
        raise Unsupported(f"series order must be in 1..{MAX_ORDER}, got {n_terms}")
    ylo, yhi = y.lo, y.hi
    tlo, thi = t0.lo, t0.hi
    slo = shi = 0.0
    best_lo, best_hi = -math.inf, math.inf
    for n in range(1, n_terms + 1):
        slo = _dn(slo + tlo)
        shi = _up(shi + thi)
        rlo, rhi = ratios[n]
        # z = y * r_n, r_n > 0
        if ylo >= 0.0:
            zlo, zhi = _dn(ylo * rlo), _up(yhi * rhi)
        elif yhi <= 0.0:
            zlo, zhi = _dn(ylo * rhi), _up(yhi * rlo)
        else:
            zlo, zhi = _dn(ylo * rhi), _up(yhi * rhi)
        p1, p2, p3, p4 = tlo * zlo, tlo * zhi, thi * zlo, thi * zhi
        tlo, thi = _dn(min(p1, p2, p3, p4)), _up(max(p1, p2, p3, p4))
        if alternating:
            tlo, thi = -thi, -tlo
        r = tail(n, max(-tlo, thi))
        if r < math.inf:
            best_lo = max(best_lo, _dn(slo - r))
            best_hi = min(best_hi, _up(shi + r))
    if not best_lo <= best_hi:
        raise ArithmeticError("inconsistent series enclosures")
    return _checked(best_lo, best_hi)


def _lagrange(m: float) -> Callable[[int, float], float]:
    if m == 1.0:
        return lambda n, t: t
    return lambda n, t: _up(t * m)


def _first_omitted(n: int, t: float) -> float:
    # Lagrange bound with |f^(k)| <= 1, or Leibniz for decreasing alternating terms
    return t


def _geometric(y: Interval, ratios: list[tuple[float, float]], monotone_ratio: bool):
    """Tail bound T/(1-rho) where rho bounds every later term ratio."""
    def tail(n: int, t: float) -> float:
        sup_r = ratios[n + 1][1] if monotone_ratio else 1.0
        rho = _up(y.mag * sup_r)
        if rho >= 1.0:
            return math.inf
        return _up(t / _dn(1.0 - rho))
    return tail


def _sq(x: Interval) -> Interval:
    return pow_int(x, 2)


# ---------------------------------------------------------------------------
# narrow evaluators: valid for any interval argument inside the domain,
# tight when the argument is (close to) a point
# ---------------------------------------------------------------------------

_UNIT = Interval(-1.0, 1.0)


def _sin_n(x: Interval, n: int) -> Interval:
    return _series(_sq(x), x, _R_SIN, True, n, _first_omitted).intersect(_UNIT)


def _cos_n(x: Interval, n: int) -> Interval:
    return _series(_sq(x), _ONE, _R_COS, True, n, _first_omitted).intersect(_UNIT)


def _exp_n(x: Interval, n: int) -> Interval:
    m = x.mag
    if m <= 1.0:
        return _series(x, _ONE, _R_EXP, False, n, _lagrange(_exp_up(max(x.hi, 0.0))))
    s = max(math.ceil(math.log2(m)), 1)
    while math.ldexp(m, -s) > 1.0:
        s += 1
    scaled = _checked(_dn(math.ldexp(x.lo, -s)), _up(math.ldexp(x.hi, -s)))
    return pow_int(_exp_n(scaled, n), 2 ** s)


def _sinh_n(x: Interval, n: int) -> Interval:
    if x.mag <= 1.0:
        return _series(_sq(x), x, _R_SIN, False, n, _lagrange(_exp_up(x.mag)))
    return (_exp_n(x, n) - _exp_n(-x, n)) * 0.5


def _cosh_n(x: Interval, n: int) -> Interval:
    if x.mag <= 1.0:
        r = _series(_sq(x), _ONE, _R_COS, False, n, _lagrange(_exp_up(x.mag)))
    else:
        r = (_exp_n(x, n) + _exp_n(-x, n)) * 0.5
    return _checked(max(r.lo, 1.0), max(r.hi, 1.0))


def _atanhc_series(u: Interval, n: int) -> Interval:
    """arctanh(u)/u = sum u^(2k)/(2k+1), |u| < 1."""
    y = _sq(u)
    return _series(y, _ONE, _R_ATANH, False, n, _geometric(y, _R_ATANH, False))


def _atanc_series(u: Interval, n: int) -> Interval:
    """arctan(u)/u = sum (-1)^k u^(2k)/(2k+1), |u| <= 1."""
    return _series(_sq(u), _ONE, _R_ATANH, True, n, _first_omitted)


def _asinhc_series(u: Interval, n: int) -> Interval:
    """arcsinh(u)/u, alternating with decreasing terms for |u| < 1."""
    return _series(_sq(u), _ONE, _R_ASINH, True, n, _first_omitted)


def _sinc_series(u: Interval, n: int) -> Interval:
    return _series(_sq(u), _ONE, _R_SIN, True, n, _first_omitted)


def _sinhc_series(u: Interval, n: int) -> Interval:
    return _series(_sq(u), _ONE, _R_SIN, False, n, _lagrange(_exp_up(u.mag)))


@lru_cache(maxsize=1 << 16)
def _log_pt(v: float, n: int) -> tuple[float, float]:
    m, e = math.frexp(v)
    if m < 0.7071067811865476:
        m *= 2.0
        e -= 1
    # m - 1 is exact for m in [1/2, 2]
    t = Interval(m - 1.0) / (Interval(m) + 1.0)
    r = t * _atanhc_series(t, n) * 2.0
    if e:
        r = r + LN2 * float(e)
    return r.lo, r.hi


def _log_iv(x: Interval, n: int) -> Interval:
    a = _log_pt(x.lo, n)
    b = a if x.hi == x.lo else _log_pt(x.hi, n)
    return _checked(a[0], b[1])


def _atan_reduced(x: Interval, n: int) -> Interval:
    # |x| <= 1; two half-angle steps bring the argument below tan(pi/16)
    if x.mag <= 0.5:
        return x * _atanc_series(x, n)
    t = x
    for _ in range(2):
        t = t / (sqrt_iv(_sq(t) + 1.0) + 1.0)
    return t * _atanc_series(t, n) * 4.0


@lru_cache(maxsize=1 << 16)
def _atan_pt(v: float, n: int) -> tuple[float, float]:
    a = abs(v)
    if a <= 1.0:
        r = _atan_reduced(Interval(a), n)
    else:
        r = HALF_PI - _atan_reduced(1.0 / Interval(a), n)
    if v < 0.0:
        r = -r
    return r.lo, r.hi


def _atan_iv(x: Interval, n: int) -> Interval:
    a = _atan_pt(x.lo, n)
    b = a if x.hi == x.lo else _atan_pt(x.hi, n)
    return _checked(a[0], b[1])


@lru_cache(maxsize=1 << 16)
def _point(fn: Fn, v: float, n: int) -> tuple[float, float]:
    x = Interval(v)
    if fn is Fn.SIN:
        r = _sin_n(x, n)
    elif fn is Fn.COS:
        r = _cos_n(x, n)
    elif fn is Fn.EXP:
        r = _exp_n(x, n)
    elif fn is Fn.SINH:
        r = _sinh_n(x, n)
    elif fn is Fn.COSH:
        r = _cosh_n(x, n)
    elif fn is Fn.TAN:
        c = _cos_n(x, n)
        if c.straddles_zero():
            # a low order can be too loose this close to pi/2; more terms only tighten
            n = MAX_ORDER
            c = _cos_n(x, n)
        if c.straddles_zero():
            raise DomainError(f"tan: cos changes sign near {v!r}")
        r = _sin_n(x, n) / c
    elif fn is Fn.TANH:
        r = (_sinh_n(x, n) / _cosh_n(x, n)).intersect(_UNIT)
    elif fn is Fn.LOG:
        return _log_pt(v, n)
    elif fn is Fn.ARCTAN:
        return _atan_pt(v, n)
    elif fn is Fn.ARCSIN:
        s = sqrt_iv((1.0 - x) * (1.0 + x))
        r = _atan_iv(x / s, n)
    elif fn in (Fn.ARCSINH, Fn.ARCTANH):
        # odd: work on |v|; the series is far tighter than the log form near 0
        a = Interval(abs(v))
        if a.hi <= _SMALL:
            r = a * (_asinhc_series(a, n) if fn is Fn.ARCSINH else _atanhc_series(a, n))
        elif fn is Fn.ARCSINH:
            r = _log_iv(a + sqrt_iv(_sq(a) + 1.0), n)
        else:
            r = _log_iv((1.0 + a) / (1.0 - a), n) * 0.5
        if v < 0.0:
            r = -r
    else:  # pragma: no cover
        raise ValueError(fn)
    return r.lo, r.hi


# ---------------------------------------------------------------------------
# domain checks and interval-level enclosures
# ---------------------------------------------------------------------------

def _check_domain(fn: Fn, a: Interval) -> None:
    if fn in (Fn.SIN, Fn.COS, Fn.TAN):
        if a.mag > TRIG_LIMIT:
            raise DomainError(f"{fn}: |x| <= {TRIG_LIMIT} required, got {a}")
        if fn is Fn.TAN and (_may_contain(a, HALF_PI) or _may_contain(a, -HALF_PI)):
            raise DomainError(f"tan: cos changes sign on {a}")
    elif fn in (Fn.SINH, Fn.COSH, Fn.EXP, Fn.TANH):
        if a.mag > HYP_LIMIT:
            raise DomainError(f"{fn}: |x| <= {HYP_LIMIT} required, got {a}")
    elif fn is Fn.LOG:
        if not a.lo > 0.0:
            raise DomainError(f"log needs a positive argument, got {a}")
    elif fn in (Fn.ARCSIN, Fn.ARCTANH):
        if not a.mag < 1.0:
            raise DomainError(f"{fn} needs |x| < 1, got {a}")


def _may_contain(a: Interval, c: Interval) -> bool:
    return a.lo <= c.hi and c.lo <= a.hi


def _pt(fn: Fn, v: float, n: int) -> Interval:
    lo, hi = _point(fn, v, n)
    return _checked(lo, hi)


def enclose(fn: Fn | str, a: IntervalLike, order: int = DEFAULT_ORDER) -> Interval:
    """Interval containing ``{fn(x) : x in a}``.

    Monotone pieces are enclosed by the hull of point enclosures at the
    endpoints; interior extrema (of sin, cos and cosh) are added when the
    interval may contain them.
    """
    fn = Fn(fn)
    a = Interval.coerce(a)
    _check_domain(fn, a)
    lo = _pt(fn, a.lo, order)
    if a.is_point():
        return lo
    hi = _pt(fn, a.hi, order)
    r = hull(lo, hi)
    if fn is Fn.SIN:
        if _may_contain(a, HALF_PI):
            r = _checked(r.lo, 1.0)
        if _may_contain(a, -HALF_PI):
            r = _checked(-1.0, r.hi)
    elif fn is Fn.COS:
        if a.straddles_zero():
            r = _checked(r.lo, 1.0)
        if a.hi >= 3.141592653589793 or a.lo <= -3.141592653589793:
            r = _checked(-1.0, r.hi)
    elif fn is Fn.COSH:
        if a.straddles_zero():
            r = _checked(1.0, r.hi)
    return r


# ---------------------------------------------------------------------------
# cardinal quotients f(u)/u
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _cardinal_pt(fn: Fn, v: float, n: int) -> tuple[float, float]:
    u = Interval(v)
    a = abs(v)
    if fn is Fn.SIN:
        r = _sinc_series(u, n)
    elif fn is Fn.SINH:
        r = _sinhc_series(u, n) if a <= 1.0 else _pt(Fn.SINH, v, n) / u
    elif fn is Fn.TAN:
        r = _sinc_series(u, n) / _pt(Fn.COS, v, n)
    elif fn is Fn.TANH:
        r = _cardinal(Fn.SINH, u, n) / _pt(Fn.COSH, v, n)
    elif fn is Fn.ARCTAN:
        r = _atanc_series(u, n) if a <= _SMALL else _pt(Fn.ARCTAN, v, n) / u
    elif fn is Fn.ARCSIN:
        s = sqrt_iv((1.0 - u) * (1.0 + u))
        w = u / s
        if w.mag <= _SMALL:
            r = _atanc_series(w, n) / s
        else:
            r = _pt(Fn.ARCSIN, v, n) / u
    elif fn is Fn.ARCSINH:
        r = _asinhc_series(u, n) if a <= _SMALL else _pt(Fn.ARCSINH, v, n) / u
    elif fn is Fn.ARCTANH:
        r = _atanhc_series(u, n) if a <= _SMALL else _pt(Fn.ARCTANH, v, n) / u
    else:
        raise ValueError(f"{fn} has no cardinal form")
    return r.lo, r.hi


def _cardinal(fn: Fn, u: Interval, n: int) -> Interval:
    lo, hi = _cardinal_pt(fn, u.lo, n)
    return _checked(lo, hi)


# cardinal quotients are even; on u >= 0 these decrease, the others increase
_CARD_DECREASING = frozenset({Fn.SIN, Fn.TANH, Fn.ARCTAN, Fn.ARCSINH})


def enclose_cardinal(fn: Fn | str, a: IntervalLike, order: int = DEFAULT_ORDER) -> Interval:
    """Enclosure of ``fn(u)/u`` over ``a``, with the value 1 at ``u = 0``."""
    fn = Fn(fn)
    if fn not in CARDINAL:
        raise ValueError(f"{fn} has no cardinal form")
    a = Interval.coerce(a)
    _check_domain(fn, a)
    near, far = a.mig, a.mag
    p = _cardinal_pt(fn, near, order)
    if far == near:
        return _checked(*p)
    q = _cardinal_pt(fn, far, order)
    if fn in _CARD_DECREASING:
        return _checked(q[0], p[1])
    return _checked(p[0], q[1])


_THIRD = Interval.from_fraction(Fraction(1, 3))
_TWO_THIRDS = Interval.from_fraction(Fraction(2, 3))

# (first coefficient, ratio table, alternating, ratio decreasing, series radius used)
# d/du (f(u)/u) = u * sum_k e_k u^(2k)
_DERIV_SERIES = {
    Fn.SIN: (-_THIRD, _R_DSINC, True, True, TRIG_LIMIT),
    Fn.SINH: (_THIRD, _R_DSINC, False, True, 1.0),
    Fn.ARCTAN: (-_TWO_THIRDS, _R_DATAN, True, True, _SMALL),
    Fn.ARCTANH: (_TWO_THIRDS, _R_DATAN, False, True, _SMALL),
    Fn.ARCSINH: (-_THIRD, _R_DASINH, True, False, _SMALL),
}


def _deriv_base(fn: Fn, u: Interval, n: int) -> Interval:
    """Derivative of the underlying function over u."""
    if fn is Fn.SIN:
        return enclose(Fn.COS, u, n)
    if fn is Fn.SINH:
        return enclose(Fn.COSH, u, n)
    if fn is Fn.ARCTAN:
        return 1.0 / (_sq(u) + 1.0)
    if fn is Fn.ARCSINH:
        return 1.0 / sqrt_iv(_sq(u) + 1.0)
    if fn is Fn.ARCTANH:
        return 1.0 / (1.0 - _sq(u))
    raise ValueError(fn)  # pragma: no cover


def _deriv_near(fn: Fn, u: Interval, n: int) -> Interval:
    t0, ratios, alternating, monotone, _ = _DERIV_SERIES[fn]
    y = _sq(u)
    g = _series(y, t0, ratios, alternating, n, _geometric(y, ratios, monotone))
    return u * g


def _deriv_far(fn: Fn, u: Interval, n: int) -> Interval:
    # (f'(u) - f(u)/u) / u, with u bounded away from zero
    return (_deriv_base(fn, u, n) - enclose_cardinal(fn, u, n)) / u


def enclose_cardinal_deriv(fn: Fn | str, a: IntervalLike, order: int = DEFAULT_ORDER) -> Interval:
    """Enclosure of ``d/du (fn(u)/u)`` over ``a`` (the derivative is 0 at ``u = 0``)."""
    fn = Fn(fn)
    if fn not in CARDINAL:
        raise ValueError(f"{fn} has no cardinal form")
    u = Interval.coerce(a)
    _check_domain(fn, u)
    n = order
    if fn is Fn.TAN:
        c = enclose(Fn.COS, u, n)
        return (enclose_cardinal_deriv(Fn.SIN, u, n) * c
                + enclose_cardinal(Fn.SIN, u, n) * enclose(Fn.SIN, u, n)) / _sq(c)
    if fn is Fn.TANH:
        c = enclose(Fn.COSH, u, n)
        return (enclose_cardinal_deriv(Fn.SINH, u, n) * c
                - enclose_cardinal(Fn.SINH, u, n) * enclose(Fn.SINH, u, n)) / _sq(c)
    if fn is Fn.ARCSIN:
        # arcsin(u)/u = atanc(w) * s with s = (1 - u^2)^(-1/2), w = u * s
        s = 1.0 / sqrt_iv((1.0 - u) * (1.0 + u))
        w = u * s
        s3 = pow_int(s, 3)
        return (enclose_cardinal_deriv(Fn.ARCTAN, w, n) * s3 * s
                + enclose_cardinal(Fn.ARCTAN, w, n) * u * s3)
    cut = _DERIV_SERIES[fn][4]
    pieces = []
    if u.lo < -cut:
        pieces.append(_deriv_far(fn, _checked(u.lo, min(u.hi, -cut)), n))
    if u.hi > cut:
        pieces.append(_deriv_far(fn, _checked(max(u.lo, cut), u.hi), n))
    if u.lo <= cut and u.hi >= -cut:
        pieces.append(_deriv_near(fn, _checked(max(u.lo, -cut), min(u.hi, cut)), n))
    return hull(*pieces)


# ---------------------------------------------------------------------------
# Bernoulli numbers and the tanh series
# ---------------------------------------------------------------------------

BERNOULLI_MAX = 64
TANH_COEFF_MAX = 30


def _bernoulli_table(nmax: int) -> tuple[Fraction, ...]:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1, B_0 = 1 (so B_1 = -1/2)
    b = [Fraction(1)]
    for m in range(1, nmax + 1):
        s = sum(comb(m + 1, k) * b[k] for k in range(m))
        b.append(-s / (m + 1))
    return tuple(b)


_BERNOULLI = _bernoulli_table(BERNOULLI_MAX)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > BERNOULLI_MAX:
        raise Unsupported(f"bernoulli is tabulated for n <= {BERNOULLI_MAX}")
    return _BERNOULLI[n]


def tanh_coeff(n: int) -> Fraction:
    """Exact Maclaurin coefficient of x**(2n+1) in tanh x."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > TANH_COEFF_MAX:
        raise Unsupported(f"tanh_coeff is available for n <= {TANH_COEFF_MAX}")
    m = n + 1
    return Fraction(4 ** m * (4 ** m - 1)) * bernoulli(2 * m) / math.factorial(2 * m)


# ---------------------------------------------------------------------------
# exact partial sums and the remainder bounds the engine uses
# ---------------------------------------------------------------------------

_SERIES_FNS = (Fn.SIN, Fn.COS, Fn.SINH, Fn.COSH, Fn.EXP)


def _degrees(fn: Fn, n_terms: int) -> list[int]:
    if fn in (Fn.SIN, Fn.SINH):
        return [2 * k + 1 for k in range(n_terms)]
    if fn in (Fn.COS, Fn.COSH):
        return [2 * k for k in range(n_terms)]
    return list(range(n_terms))


def partial_sum(fn: Fn | str, x: Fraction | float, n_terms: int) -> Fraction:
    """Exact rational sum of the first ``n_terms`` nonzero Maclaurin terms."""
    fn = Fn(fn)
    if fn not in _SERIES_FNS:
        raise ValueError(f"partial_sum supports {[str(f) for f in _SERIES_FNS]}")
    x = Fraction(x)
    total = Fraction(0)
    for k, d in enumerate(_degrees(fn, n_terms)):
        sign = -1 if fn in (Fn.SIN, Fn.COS) and k % 2 else 1
        total += sign * x ** d / math.factorial(d)
    return total


def remainder_bound(fn: Fn | str, x: float, n_terms: int) -> float:
    """Upper bound on |fn(x) - partial_sum(fn, x, n_terms)| for |x| <= 4.

    sin/cos: first omitted term |x|^d/d! (Lagrange with |f^(d)| <= 1).
    sinh/cosh/exp: |x|^d/d! times a rigid bound on e^|x|.
    """
    fn = Fn(fn)
    if fn not in _SERIES_FNS:
        raise ValueError(f"remainder_bound supports {[str(f) for f in _SERIES_FNS]}")
    a = abs(float(x))
    if a > TRIG_LIMIT:
        raise DomainError("remainder_bound is stated for |x| <= 4")
    d = _degrees(fn, n_terms + 1)[-1]
    t = Fraction(a) ** d / math.factorial(d)
    tf = float(t)
    tf = tf if Fraction(tf) >= t else _up(tf)
    if fn in (Fn.SIN, Fn.COS):
        return tf
    m = _exp_up(max(float(x), 0.0)) if fn is Fn.EXP else _exp_up(a)
    return _up(tf * m)
