import math
from fractions import Fraction

import mpmath as mp
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ineq.errors import DomainError, Unsupported
from ineq.functions import (
    CARDINAL,
    Fn,
    bernoulli,
    enclose,
    enclose_cardinal,
    enclose_cardinal_deriv,
    partial_sum,
    remainder_bound,
    tanh_coeff,
)
from ineq.interval import Interval

mp.mp.dps = 40

MP = {
    Fn.SIN: mp.sin,
    Fn.COS: mp.cos,
    Fn.SINH: mp.sinh,
    Fn.COSH: mp.cosh,
    Fn.TAN: mp.tan,
    Fn.TANH: mp.tanh,
    Fn.EXP: mp.exp,
    Fn.LOG: mp.log,
    Fn.ARCSIN: mp.asin,
    Fn.ARCTAN: mp.atan,
    Fn.ARCSINH: mp.asinh,
    Fn.ARCTANH: mp.atanh,
}

# sample ranges inside each function's supported domain
RANGE = {
    Fn.SIN: (-4, 4),
    Fn.COS: (-4, 4),
    Fn.SINH: (-4, 4),
    Fn.COSH: (-4, 4),
    Fn.TAN: (-1.5, 1.5),
    Fn.TANH: (-4, 4),
    Fn.EXP: (-4, 4),
    Fn.LOG: (1e-3, 50),
    Fn.ARCSIN: (-0.99, 0.99),
    Fn.ARCTAN: (-4, 4),
    Fn.ARCSINH: (-4, 4),
    Fn.ARCTANH: (-0.99, 0.99),
}


def mp_in(iv: Interval, v) -> bool:
    return mp.mpf(iv.lo) <= v <= mp.mpf(iv.hi)


@st.composite
def fn_point(draw, fns=tuple(Fn)):
    fn = draw(st.sampled_from(fns))
    a, b = RANGE[fn]
    return fn, draw(st.floats(min_value=a, max_value=b))


# -- examples --------------------------------------------------------------


@pytest.mark.parametrize("order", [1, 4, 24, 60])
def test_cos_zero(order):
    r = enclose(Fn.COS, Interval(0.0), order)
    assert 1.0 in r and r.width <= 1e-15


def test_sin_one_order_20():
    r = enclose(Fn.SIN, Interval(1.0), 20)
    assert 0.8414709848078965 in r
    assert mp_in(r, mp.sin(1))
    assert r.width <= 1e-12


def test_log_domain():
    with pytest.raises(DomainError):
        enclose(Fn.LOG, Interval(-1, 2))
    with pytest.raises(DomainError):
        enclose(Fn.LOG, Interval(0, 2))


@pytest.mark.parametrize(
    "fn, iv",
    [
        (Fn.SIN, Interval(-5, 0)),
        (Fn.EXP, Interval(0, 17)),
        (Fn.ARCSIN, Interval(0.5, 1.0)),
        (Fn.ARCTANH, Interval(-1.0, 0.0)),
        (Fn.TAN, Interval(1.5, 1.6)),
    ],
)
def test_domain_violations(fn, iv):
    with pytest.raises(DomainError):
        enclose(fn, iv)


def test_string_fn_ids():
    assert enclose("sin", 0.5) == enclose(Fn.SIN, Interval(0.5))


def test_fn_tags():
    assert {f.value for f in Fn} == {
        "sin", "cos", "sinh", "cosh", "tan", "tanh", "exp", "log",
        "arcsin", "arctan", "arcsinh", "arctanh",
    }


# -- containment -----------------------------------------------------------


@settings(max_examples=600)
@given(fn_point(), st.integers(min_value=4, max_value=40))
def test_point_containment(fp, order):
    fn, x = fp
    r = enclose(fn, Interval(x), order)
    assert mp_in(r, MP[fn](mp.mpf(x)))


@settings(max_examples=300)
@given(fn_point(), st.floats(min_value=0, max_value=0.5), st.floats(min_value=0, max_value=1))
def test_interval_containment(fp, w, t):
    fn, a = fp
    lo, hi = RANGE[fn]
    b = min(a + w, hi)
    x = a + t * (b - a)
    r = enclose(fn, Interval(a, b))
    assert mp_in(r, MP[fn](mp.mpf(x)))
    assert mp_in(r, MP[fn](mp.mpf(a))) and mp_in(r, MP[fn](mp.mpf(b)))


@pytest.mark.parametrize("fn", [Fn.SIN, Fn.COS, Fn.SINH, Fn.COSH])
def test_width_at_order_20(fn):
    for x in [-2.0, -1.3, -0.2, 0.0, 0.7, 1.9, 2.0]:
        assert enclose(fn, Interval(x), 20).width <= 1e-12


def test_interval_hull_covers_critical_points():
    r = enclose(Fn.SIN, Interval(1.0, 2.0))
    assert r.hi >= 1.0
    r = enclose(Fn.COS, Interval(-0.5, 3.5))
    assert r.hi >= 1.0 and r.lo <= -1.0
    r = enclose(Fn.COSH, Interval(-1.0, 0.5))
    assert r.lo <= 1.0


@settings(max_examples=200)
@given(fn_point((Fn.SIN, Fn.COS, Fn.SINH, Fn.COSH, Fn.EXP, Fn.ARCTAN)))
def test_width_shrinks_with_order(fp):
    fn, x = fp
    widths = [enclose(fn, Interval(x), n).width for n in range(2, 41)]
    assert all(b <= a for a, b in zip(widths, widths[1:]))


@settings(max_examples=200)
@given(st.floats(min_value=0.0, max_value=3.9), st.floats(min_value=0.0, max_value=0.1))
def test_parity(a, w):
    A = Interval(a, min(a + w, 3.9))
    for fn in (Fn.SIN, Fn.SINH, Fn.TANH, Fn.ARCTAN, Fn.ARCSINH):
        p, m = enclose(fn, A), enclose(fn, -A)
        assert m.lo == -p.hi and m.hi == -p.lo
    assert enclose(Fn.COS, -A) == enclose(Fn.COS, A)
    B = Interval(a / 4, min(a + w, 3.9) / 4)
    p, m = enclose(Fn.ARCTANH, B), enclose(Fn.ARCTANH, -B)
    assert m.lo == -p.hi and m.hi == -p.lo


# -- cardinal quotients ----------------------------------------------------

CARD_RANGE = {
    Fn.SIN: 3.9,
    Fn.SINH: 3.9,
    Fn.TAN: 1.5,
    Fn.TANH: 3.9,
    Fn.ARCSIN: 0.99,
    Fn.ARCTAN: 3.9,
    Fn.ARCSINH: 3.9,
    Fn.ARCTANH: 0.99,
}


def ref_dps(bound, x) -> int:
    # the error trails the bound by a relative x**2, so resolve below bound * x**2
    def digits(q):
        q = Fraction(q)
        return 0 if q == 0 else max(0, (q.denominator.bit_length() - q.numerator.bit_length()) * 3 // 10 + 1)

    return 40 + digits(bound) + 2 * digits(x)


def mp_card(fn, u):
    return mp.mpf(1) if u == 0 else MP[fn](u) / u


def mp_card_deriv(fn, u):
    return mp.diff(lambda t: mp_card(fn, t), u)


@settings(max_examples=400)
@given(st.sampled_from(sorted(CARDINAL)), st.floats(min_value=-1, max_value=1), st.floats(min_value=0, max_value=0.3))
def test_cardinal_containment(fn, s, w):
    r = CARD_RANGE[fn]
    a = s * r
    b = min(a + w, r)
    iv = Interval(a, b)
    for x in (a, b, 0.5 * (a + b)):
        assert mp_in(enclose_cardinal(fn, iv), mp_card(fn, mp.mpf(x)))
        # numerical differentiation is meaningless right at the origin
        if abs(x) >= 1e-3:
            assert mp_in(enclose_cardinal_deriv(fn, iv), mp_card_deriv(fn, mp.mpf(x)))


def test_cardinal_at_zero():
    for fn in CARDINAL:
        assert 1.0 in enclose_cardinal(fn, Interval(0.0))
        assert 0.0 in enclose_cardinal_deriv(fn, Interval(0.0))


def test_cardinal_tight_near_zero():
    r = enclose_cardinal(Fn.SIN, Interval(1e-6, 2e-6))
    assert r.width < 1e-11
    with pytest.raises(ValueError):
        enclose_cardinal(Fn.COS, Interval(0.1))


# -- Bernoulli numbers -----------------------------------------------------


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(4) == Fraction(-1, 30)


def test_bernoulli_matches_sympy():
    for n in range(2, 65):
        b = sympy.bernoulli(n)
        assert bernoulli(n) == Fraction(int(b.p), int(b.q))


def test_bernoulli_odd_vanish():
    assert all(bernoulli(n) == 0 for n in range(3, 65, 2))


def test_bernoulli_limits():
    with pytest.raises(Unsupported):
        bernoulli(65)
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_tanh_coeff_examples():
    assert tanh_coeff(0) == 1
    assert tanh_coeff(1) == Fraction(-1, 3)
    assert tanh_coeff(2) == Fraction(2, 15)
    with pytest.raises(Unsupported):
        tanh_coeff(31)


def test_tanh_coeff_matches_series():
    x = sympy.Symbol("x")
    ser = sympy.series(sympy.tanh(x), x, 0, 24).removeO()
    for n in range(12):
        c = ser.coeff(x, 2 * n + 1)
        assert tanh_coeff(n) == Fraction(int(c.p), int(c.q))


@settings(max_examples=200)
@given(st.floats(min_value=-0.5, max_value=0.5), st.integers(min_value=0, max_value=12))
def test_tanh_partial_sums_leibniz(x, n):
    q = Fraction(x)
    s = sum(tanh_coeff(j) * q ** (2 * j + 1) for j in range(n + 1))
    bound = abs(tanh_coeff(n + 1)) * abs(q) ** (2 * n + 3)
    with mp.workdps(ref_dps(bound, x)):
        err = abs(mp.mpf(s.numerator) / s.denominator - mp.tanh(mp.mpf(x)))
        assert err <= mp.mpf(bound.numerator) / bound.denominator


# -- partial sums and remainder bounds -------------------------------------


@settings(max_examples=300)
@given(
    st.sampled_from([Fn.SIN, Fn.COS, Fn.SINH, Fn.COSH, Fn.EXP]),
    st.floats(min_value=-4, max_value=4),
    st.integers(min_value=4, max_value=30),
)
def test_remainder_bound_valid(fn, x, n):
    s = partial_sum(fn, x, n)
    bound = remainder_bound(fn, x, n)
    with mp.workdps(ref_dps(bound, x)):
        err = abs(mp.mpf(s.numerator) / s.denominator - MP[fn](mp.mpf(x)))
        assert err <= bound


def test_partial_sum_values():
    assert partial_sum(Fn.EXP, Fraction(1), 3) == Fraction(5, 2)
    assert partial_sum(Fn.SIN, Fraction(1), 2) == Fraction(5, 6)
    assert partial_sum(Fn.COS, 2, 2) == -1
    with pytest.raises(ValueError):
        partial_sum(Fn.LOG, 1, 3)
    with pytest.raises(DomainError):
        remainder_bound(Fn.SIN, 5.0, 3)


def test_exp_large_argument():
    r = enclose(Fn.EXP, Interval(10.0))
    assert mp_in(r, mp.exp(10)) and r.width / math.exp(10) < 1e-13


@pytest.mark.parametrize("order", [1, 2, 5])
def test_tan_near_pole_at_low_order(order):
    r = enclose(Fn.TAN, Interval(-1.4941880877134195), order)
    assert mp_in(r, mp.tan(mp.mpf(-1.4941880877134195)))
