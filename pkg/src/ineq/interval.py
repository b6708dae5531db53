"""Outward-rounded interval arithmetic on IEEE doubles.

Every operation computes its endpoints with the native (round-to-nearest)
floating-point operation and then moves each endpoint one unit in the last
place outward.  A correctly rounded result is at most half an ulp away from
the exact value, so one ulp of widening is enough for containment, and no
global rounding-mode state is ever touched.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import DegenerateSplit, DivisionByZeroInterval, DomainError, IntervalOverflow

__all__ = [
    "Interval",
    "arith",
    "pow_int",
    "sqrt_iv",
    "split",
    "hull",
    "PI",
    "HALF_PI",
    "LN2",
]

_INF = math.inf
_nextafter = math.nextafter
_isfinite = math.isfinite

Number = Union[int, float, Fraction]


def _dn(v: float) -> float:
    return _nextafter(v, -_INF)


def _up(v: float) -> float:
    return _nextafter(v, _INF)


def _checked(lo: float, hi: float) -> "Interval":
    if not (_isfinite(lo) and _isfinite(hi)):
        raise IntervalOverflow(f"non-finite endpoint in [{lo}, {hi}]")
    iv = object.__new__(Interval)
    iv.lo = lo
    iv.hi = hi
    return iv


class Interval:
    """Closed interval ``[lo, hi]`` of doubles that contains a true real value.

    Instances are treated as immutable.  Arithmetic operators accept other
    intervals as well as plain numbers; numbers are converted exactly when
    they are doubles and with outward rounding when they are fractions.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        lo = float(lo)
        hi = lo if hi is None else float(hi)
        if not (_isfinite(lo) and _isfinite(hi)):
            raise IntervalOverflow(f"non-finite endpoint in [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    # construction -----------------------------------------------------
    @classmethod
    def point(cls, v: float) -> "Interval":
        return cls(v, v)

    @classmethod
    def from_fraction(cls, q: Number) -> "Interval":
        """Tightest double interval around an exact rational."""
        q = Fraction(q)
        f = float(q)
        if Fraction(f) == q:
            return _checked(f, f)
        if Fraction(f) < q:
            return _checked(f, _up(f))
        return _checked(_dn(f), f)

    @staticmethod
    def coerce(v: Union["Interval", Number]) -> "Interval":
        if isinstance(v, Interval):
            return v
        if isinstance(v, float):
            return _checked(v, v)
        return Interval.from_fraction(v)

    # queries ----------------------------------------------------------
    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * self.lo + 0.5 * self.hi

    @property
    def mag(self) -> float:
        """Largest absolute value in the interval."""
        return max(-self.lo, self.hi)

    @property
    def mig(self) -> float:
        """Smallest absolute value in the interval."""
        if self.lo > 0.0:
            return self.lo
        if self.hi < 0.0:
            return -self.hi
        return 0.0

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, v: Union[float, Fraction, "Interval"]) -> bool:
        if isinstance(v, Interval):
            return self.lo <= v.lo and v.hi <= self.hi
        if isinstance(v, Fraction):
            return Fraction(self.lo) <= v <= Fraction(self.hi)
        return self.lo <= v <= self.hi

    __contains__ = contains

    def straddles_zero(self) -> bool:
        return self.lo <= 0.0 <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise ValueError(f"disjoint enclosures {self} and {other}")
        return _checked(lo, hi)

    def hull(self, other: "Interval") -> "Interval":
        return _checked(min(self.lo, other.lo), max(self.hi, other.hi))

    def widen(self) -> "Interval":
        """One ulp outward on both ends; never shrinks."""
        return _checked(_dn(self.lo), _up(self.hi))

    # arithmetic -------------------------------------------------------
    def __neg__(self) -> "Interval":
        return _checked(-self.hi, -self.lo)

    def __pos__(self) -> "Interval":
        return self

    def __abs__(self) -> "Interval":
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return -self
        return _checked(0.0, self.mag)

    def __add__(self, other):
        o = Interval.coerce(other)
        return _checked(_dn(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = Interval.coerce(other)
        return _checked(_dn(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other):
        return Interval.coerce(other) - self

    def __mul__(self, other):
        o = Interval.coerce(other)
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        if a >= 0.0 and c >= 0.0:
            return _checked(_dn(a * c), _up(b * d))
        p1, p2, p3, p4 = a * c, a * d, b * c, b * d
        return _checked(_dn(min(p1, p2, p3, p4)), _up(max(p1, p2, p3, p4)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Interval.coerce(other)
        c, d = o.lo, o.hi
        if c <= 0.0 <= d:
            raise DivisionByZeroInterval(f"divisor {o} contains zero")
        a, b = self.lo, self.hi
        q1, q2, q3, q4 = a / c, a / d, b / c, b / d
        return _checked(_dn(min(q1, q2, q3, q4)), _up(max(q1, q2, q3, q4)))

    def __rtruediv__(self, other):
        return Interval.coerce(other) / self

    def __pow__(self, n: int):
        return pow_int(self, n)

    def sqrt(self) -> "Interval":
        return sqrt_iv(self)

    # dunder -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"


def arith(kind: str, a: Interval, b: Interval) -> Interval:
    """Apply one of ``add``, ``sub``, ``mul``, ``div`` to two intervals."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def _pow_dn(v: float, n: int) -> float:
    # v >= 0; every partial product rounded down stays a lower bound
    r = 1.0
    for _ in range(n):
        r = _dn(r * v)
    return max(r, 0.0)


def _pow_up(v: float, n: int) -> float:
    r = 1.0
    for _ in range(n):
        r = _up(r * v)
    return r


def pow_int(a: Interval, n: int) -> Interval:
    """``a**n`` for a nonnegative integer ``n``.

    Even powers of an interval containing zero start exactly at zero rather
    than at the (negative) naive product bound.
    """
    if n < 0:
        raise ValueError("pow_int needs a nonnegative exponent")
    if n == 0:
        return _checked(_dn(1.0), _up(1.0))
    if n == 1:
        return a
    lo, hi = a.lo, a.hi
    if lo >= 0.0:
        return _checked(_pow_dn(lo, n), _pow_up(hi, n))
    if hi <= 0.0:
        if n % 2 == 0:
            return _checked(_pow_dn(-hi, n), _pow_up(-lo, n))
        return _checked(-_pow_up(-lo, n), -_pow_dn(-hi, n))
    if n % 2 == 0:
        return _checked(0.0, _pow_up(max(-lo, hi), n))
    return _checked(-_pow_up(-lo, n), _pow_up(hi, n))


def sqrt_iv(a: Interval) -> Interval:
    if a.lo < 0.0:
        raise DomainError(f"sqrt of {a} with negative lower endpoint")
    lo = 0.0 if a.lo == 0.0 else max(_dn(math.sqrt(a.lo)), 0.0)
    hi = 0.0 if a.hi == 0.0 else _up(math.sqrt(a.hi))
    return _checked(lo, hi)


def split(a: Interval) -> tuple[Interval, Interval]:
    """Bisect at a representable midpoint strictly inside ``a``."""
    if not a.lo < a.hi:
        raise DegenerateSplit(f"cannot split {a}")
    m = 0.5 * a.lo + 0.5 * a.hi
    if not a.lo < m < a.hi:
        m = a.lo + 0.5 * (a.hi - a.lo)
    if not a.lo < m < a.hi:
        m = _up(a.lo)
    if not a.lo < m < a.hi:
        raise DegenerateSplit(f"no representable point strictly inside {a}")
    return _checked(a.lo, m), _checked(m, a.hi)


def hull(*ivs: Interval) -> Interval:
    return _checked(min(i.lo for i in ivs), max(i.hi for i in ivs))


# pi = 3.14159265358979323846264338327950288..., its two neighbouring doubles
PI = Interval(3.141592653589793, 3.1415926535897936)
HALF_PI = Interval(1.5707963267948966, 1.5707963267948968)
# ln 2 = 0.69314718055994530941723212145817656...
LN2 = Interval(0.6931471805599453, 0.6931471805599454)
