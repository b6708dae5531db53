"""Double-double arithmetic from error-free transforms.

A double-double is an unevaluated sum ``hi + lo`` of two doubles with
``|lo| <= ulp(hi)/2``, giving roughly 106 significant bits.  Every routine
here uses only ``+ - * /`` and ``sqrt`` so the same code runs on Python
floats and elementwise on numpy arrays.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1

# relative error of one double-double operation; the published bounds for
# the accurate add/mul/div/sqrt below are all under 16 * 2**-106
EPS = 2.0 ** -100


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def add(ah, al, bh, bl):
    s1, s2 = two_sum(ah, bh)
    t1, t2 = two_sum(al, bl)
    s2 = s2 + t1
    s1, s2 = quick_two_sum(s1, s2)
    s2 = s2 + t2
    return quick_two_sum(s1, s2)


def mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e = e + (ah * bl + al * bh)
    return quick_two_sum(p, e)


def mul_d(ah, al, b):
    p, e = two_prod(ah, b)
    e = e + al * b
    return quick_two_sum(p, e)


def div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = mul_d(bh, bl, q1)
    rh, rl = add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = mul_d(bh, bl, q2)
    rh, rl = add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = quick_two_sum(q1, q2)
    return add(q1, q2, q3, 0.0 * q3)


def sqrt(ah, al):
    s = np.sqrt(ah)
    ph, pl = two_prod(s, s)
    rh, rl = add(ah, al, -ph, -pl)
    with np.errstate(invalid="ignore", divide="ignore"):
        e = np.where(s > 0.0, rh / (2.0 * np.where(s > 0.0, s, 1.0)), 0.0)
    hi, lo = quick_two_sum(s, e)
    if np.ndim(hi) == 0:
        return float(hi), float(lo)
    return hi, lo


def from_fraction(q: Fraction) -> tuple[float, float]:
    hi = float(q)
    lo = float(q - Fraction(hi))
    return hi, lo


def to_fraction(hi: float, lo: float) -> Fraction:
    return Fraction(float(hi)) + Fraction(float(lo))
