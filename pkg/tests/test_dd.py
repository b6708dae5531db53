from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ineq import dd

# products and quotients of these stay clear of overflow and of subnormal low words
moderate = st.floats(min_value=-1e120, max_value=1e120, allow_nan=False, allow_infinity=False).filter(
    lambda v: v == 0.0 or abs(v) > 1e-120
)


@st.composite
def doubles_double(draw):
    hi = draw(moderate)
    t = draw(st.floats(min_value=-0.5, max_value=0.5))
    return hi, t * abs(hi) * 2.0 ** -53


def rel_err(got: Fraction, want: Fraction) -> Fraction:
    return abs(got - want) / abs(want) if want else abs(got)


@given(moderate, moderate)
def test_two_sum_exact(a, b):
    s, e = dd.two_sum(a, b)
    assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)


@given(moderate, moderate)
def test_two_prod_exact(a, b):
    p, e = dd.two_prod(a, b)
    assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)


@settings(max_examples=300)
@given(doubles_double(), doubles_double())
def test_add_mul_accuracy(a, b):
    qa, qb = dd.to_fraction(*a), dd.to_fraction(*b)
    s = dd.to_fraction(*dd.add(*a, *b))
    # add is accurate relative to the operand size, not the possibly cancelled sum
    assert abs(s - (qa + qb)) <= dd.EPS * (abs(qa) + abs(qb))
    assert rel_err(dd.to_fraction(*dd.mul(*a, *b)), qa * qb) <= dd.EPS


@settings(max_examples=300)
@given(doubles_double(), doubles_double())
def test_div_accuracy(a, b):
    if b[0] == 0.0:
        return
    qa, qb = dd.to_fraction(*a), dd.to_fraction(*b)
    assert rel_err(dd.to_fraction(*dd.div(*a, *b)), qa / qb) <= dd.EPS


@settings(max_examples=300)
@given(st.floats(min_value=1e-100, max_value=1e100))
def test_sqrt_accuracy(x):
    h, l = dd.sqrt(x, 0.0)
    r = dd.to_fraction(h, l)
    assert rel_err(r * r, Fraction(x)) <= 2 * dd.EPS


def test_sqrt_zero_and_arrays():
    assert dd.sqrt(0.0, 0.0) == (0.0, 0.0)
    h, l = dd.sqrt(np.array([4.0, 2.0, 0.0]), np.zeros(3))
    assert h[0] == 2.0 and l[0] == 0.0 and h[2] == 0.0
    assert rel_err(dd.to_fraction(h[1], l[1]) ** 2, Fraction(2)) <= 2 * dd.EPS


def test_fraction_round_trip():
    q = Fraction(1, 3)
    hi, lo = dd.from_fraction(q)
    assert abs(dd.to_fraction(hi, lo) - q) <= q * 2.0 ** -105
    assert dd.from_fraction(Fraction(3, 4)) == (0.75, 0.0)


def test_vectorised_matches_scalar():
    a = np.array([1.0, -3.5, 1e10])
    b = np.array([1e-17, 2.25, -7.0])
    h, l = dd.mul(a, 0.0 * a, b, 0.0 * b)
    for i in range(3):
        assert (h[i], l[i]) == dd.mul(float(a[i]), 0.0, float(b[i]), 0.0)
