import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ineq import catalog, expr as E
from ineq.errors import BindingError, DomainError, NotDegenerate
from ineq.functions import Fn, enclose
from ineq.interval import Interval
from ineq.oracle import ExtendedValue, eval_expr, eval_fn, gap_order

mp.mp.dps = 60

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

RANGE = {
    Fn.SIN: (-4, 4),
    Fn.COS: (-4, 4),
    Fn.SINH: (-4, 4),
    Fn.COSH: (-4, 4),
    Fn.TAN: (-1.5, 1.5),
    Fn.TANH: (-4, 4),
    Fn.EXP: (-4, 4),
    Fn.LOG: (1e-3, 50),
    Fn.ARCSIN: (-0.999, 0.999),
    Fn.ARCTAN: (-4, 4),
    Fn.ARCSINH: (-4, 4),
    Fn.ARCTANH: (-0.999, 0.999),
}

x = E.var("x")


def mp_bounds_hold(v: ExtendedValue, ref) -> bool:
    exact = mp.mpf(float(v.hi)) + mp.mpf(float(v.lo))
    return abs(exact - ref) <= mp.mpf(float(v.err_bound))


# -- examples --------------------------------------------------------------


def test_sin_half_pi_double():
    v = eval_fn(Fn.SIN, math.pi / 2)
    a, b = v.bounds()
    assert a <= 1.0 <= b


def test_cos_one():
    v = eval_fn(Fn.COS, 1.0)
    assert v.err_bound <= 1e-20
    assert abs(v.value - 0.5403023058681397) < 1e-15
    assert mp_bounds_hold(v, mp.cos(1))


def test_arctanh_half_is_half_log_three():
    v = eval_fn(Fn.ARCTANH, 0.5)
    w = eval_fn(Fn.LOG, 3.0) * Fraction(1, 2)
    assert abs((v - w).value) <= v.err_bound + w.err_bound
    assert abs(v.value - 0.5493061443340548) < 1e-15


def test_expr_examples():
    v = eval_expr((2 + E.cos(x)) / 3, {"x": 1.0})
    assert abs(v.value - 0.8467674352893799) < 1e-15 and v.err_bound < 1e-25
    v = eval_expr(x, {"x": 0.25})
    assert v.value == 0.25 and v.err_bound == 0.0
    v = eval_expr(E.sin(x) / x, {"x": 1.0})
    assert abs(v.value - 0.8414709848078965) < 1e-15
    assert mp_bounds_hold(v, mp.sin(1))


def test_binding_and_domain_errors():
    with pytest.raises(BindingError):
        eval_expr(E.sin(x) / x, {})
    with pytest.raises(DomainError):
        eval_expr(E.sin(x) / x, {"x": 0.0})
    with pytest.raises(DomainError):
        eval_fn(Fn.LOG, -1.0)
    with pytest.raises(DomainError):
        eval_fn(Fn.ARCSIN, 1.0)
    with pytest.raises(DomainError):
        eval_fn(Fn.SIN, 10.0)


def test_constants_in_expressions():
    v = eval_expr(E.PI / 4, {})
    assert mp_bounds_hold(v, mp.pi / 4)
    v = eval_expr(E.sqrt(E.const(Fraction(27, 5))), {})
    assert mp_bounds_hold(v, mp.sqrt(mp.mpf(27) / 5))


# -- accuracy against an independent reference -----------------------------


@settings(max_examples=1000)
@given(st.sampled_from(list(Fn)), st.floats(min_value=0, max_value=1))
def test_relative_accuracy(fn, t):
    a, b = RANGE[fn]
    xv = a + t * (b - a)
    v = eval_fn(fn, xv)
    ref = MP[fn](mp.mpf(xv))
    assert mp_bounds_hold(v, ref)
    if ref != 0:
        # near a zero of fn the absolute error governs, not the relative one
        assert abs(mp.mpf(float(v.hi)) + mp.mpf(float(v.lo)) - ref) <= 1e-25 * max(abs(ref), mp.mpf(abs(xv)) * 1e-5)


def test_vectorised_matches_scalar():
    xs = np.linspace(-3.5, 3.5, 41)
    for fn in (Fn.SIN, Fn.COSH, Fn.ARCTAN, Fn.EXP):
        vec = eval_fn(fn, xs)
        for i in (0, 7, 20, 40):
            s = eval_fn(fn, float(xs[i]))
            assert vec.hi[i] == s.hi and vec.lo[i] == s.lo


def test_wide_exponential_range():
    for xv in (-650.0, -30.0, 12.5, 699.0):
        v = eval_fn(Fn.EXP, xv)
        assert mp_bounds_hold(v, mp.exp(xv))
    for xv in (-20.0, 15.0):
        assert mp_bounds_hold(eval_fn(Fn.SINH, xv), mp.sinh(xv))
        assert mp_bounds_hold(eval_fn(Fn.COSH, xv), mp.cosh(xv))


def test_tiny_arguments_keep_bounds():
    for xv in (1e-300, 3e-200, 1e-30):
        for fn in (Fn.SIN, Fn.SINH, Fn.TAN, Fn.ARCTAN, Fn.ARCSINH, Fn.ARCTANH):
            assert mp_bounds_hold(eval_fn(fn, xv), MP[fn](mp.mpf(xv)))
        assert mp_bounds_hold(eval_expr(x ** 4, {"x": xv}), mp.mpf(xv) ** 4)


# -- cross-validation and identities ---------------------------------------


def test_cross_validation_with_enclosures():
    rng = np.random.default_rng(20240611)
    fns = list(Fn)
    violations = 0
    for _ in range(10_000):
        fn = fns[rng.integers(len(fns))]
        a, b = RANGE[fn]
        xv = float(rng.uniform(a, b))
        r = enclose(fn, Interval(xv), 40)
        v = eval_fn(fn, xv)
        lo, hi = v.bounds()
        if not (v.value in r and lo <= r.hi and hi >= r.lo):
            violations += 1
    assert violations == 0


@settings(max_examples=300)
@given(st.floats(min_value=-4, max_value=4))
def test_pythagorean_identities(xv):
    s, c = eval_fn(Fn.SIN, xv), eval_fn(Fn.COS, xv)
    r = s * s + c * c - 1
    assert abs(r.value) <= r.err_bound
    sh, ch = eval_fn(Fn.SINH, xv), eval_fn(Fn.COSH, xv)
    r = ch * ch - sh * sh - 1
    assert abs(r.value) <= r.err_bound


@settings(max_examples=200)
@given(st.floats(min_value=0.01, max_value=3.9))
def test_parity_samples(xv):
    for fn in (Fn.SIN, Fn.SINH, Fn.TANH, Fn.ARCTAN, Fn.ARCSINH):
        p, m = eval_fn(fn, xv), eval_fn(fn, -xv)
        assert p.hi == -m.hi and p.lo == -m.lo
    for fn in (Fn.ARCSIN, Fn.ARCTANH):
        p, m = eval_fn(fn, xv / 4), eval_fn(fn, -xv / 4)
        assert p.hi == -m.hi and p.lo == -m.lo
    for fn in (Fn.COS, Fn.COSH):
        assert eval_fn(fn, xv) == eval_fn(fn, -xv)


def test_log_exp_round_trip():
    for xv in (0.01, 0.7, 2.0, 35.0):
        v = eval_expr(E.exp(E.log(x)), {"x": xv})
        assert abs(v.value - xv) <= v.err_bound + 1e-15 * xv


# -- degeneracy orders -----------------------------------------------------


@pytest.mark.parametrize("id_, k", [("baricz_lo", 2), ("jordan_hi", 3), ("baricz_hi", 4), ("thm25_c2", 4)])
def test_gap_order_examples(id_, k):
    g = gap_order(catalog.lookup(id_), "lower")
    assert g.order == k and g.residual <= 0.05


FLAGGED = [(r, v, side) for r in catalog.entries() for v, side, _ in r.degenerate_endpoints]


@pytest.mark.parametrize("rec, v, side", FLAGGED, ids=[f"{r.id}-{v}-{s}" for r, v, s in FLAGGED])
def test_gap_order_every_flagged_endpoint(rec, v, side):
    g = gap_order(rec, side, v)
    assert g.order == rec.expected_order(v, side)
    assert g.residual <= 0.05


def test_gap_order_rejects_unflagged():
    with pytest.raises(NotDegenerate):
        gap_order(catalog.lookup("thm35"), "upper")
    with pytest.raises(ValueError):
        gap_order(catalog.lookup("baricz_hi"), "middle")
