"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line through the ``criterion`` fixture; the
lines are repeated in the terminal summary under "acceptance criteria".
"""

import io
import math
import time
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

import mpmath as mp
import numpy as np

from ineq import catalog, expr as E, oracle, prover
from ineq.cli import run
from ineq.functions import Fn, bernoulli, enclose, tanh_coeff
from ineq.interval import Interval
from ineq.prover import ProverConfig

x = E.var("x")


def test_01_full_catalog(criterion, monkeypatch):
    # one worker so per-record times are not inflated by contention
    monkeypatch.setenv("INEQ_THREADS", "1")
    t0 = time.perf_counter()
    results = prover.verify_all(ProverConfig())
    total = time.perf_counter() - t0
    proven = sum(o.proven for _, o, _ in results)
    slowest_id, _, slowest = max(results, key=lambda r: r[2])
    ok = proven == len(catalog.entries()) and slowest <= 5.0 and total <= 60.0
    criterion(1, "every record Proven, each <= 5 s, total <= 60 s", ok,
              f"{proven}/{len(results)} Proven, slowest {slowest_id} {slowest:.2f} s, total {total:.1f} s")
    assert ok


def test_02_chain_at_one(criterion):
    mp.mp.dps = 40
    one = mp.mpf(1)
    chain = [
        ((1 + E.cos(x)) / 2, (1 + mp.cos(one)) / 2),
        (E.sin(x), mp.sin(one)),
        ((2 + E.cos(x)) / 3, (2 + mp.cos(one)) / 3),
    ]
    hyp = [
        ((1 / E.cosh(x)) ** Fraction(1, 2), mp.sqrt(1 / mp.cosh(one))),
        (1 / E.sinh(x), 1 / mp.sinh(one)),
        ((1 / E.cosh(x)) ** Fraction(1, 4), (1 / mp.cosh(one)) ** mp.mpf(0.25)),
    ]
    worst = 0.0
    ordered = True
    for group in (chain, hyp):
        vals = []
        for e, ref in group:
            v = oracle.eval_expr(e, {"x": 1.0})
            worst = max(worst, float(abs(mp.mpf(v.hi) + mp.mpf(v.lo) - ref)))
            vals.append(v)
        for a, b in zip(vals, vals[1:]):
            ordered &= bool((b - a).value > (a.err_bound + b.err_bound))
    # published anchors; the two quarter/half powers are only good to about 1e-5
    anchors = [(0.7701511529, 1e-10), (0.8414709848, 1e-10), (0.8467674353, 1e-10),
               (0.8050104, 1e-5), (0.8509181, 1e-7), (0.8972247, 1e-5)]
    got = [oracle.eval_expr(e, {"x": 1.0}).value for e, _ in chain + hyp]
    digits = all(abs(g - a) < tol for g, (a, tol) in zip(got, anchors))
    ok = worst <= 1e-12 and ordered and digits
    criterion(2, "chain constants at x = 1 within 1e-12 and correctly ordered", ok, f"max deviation {worst:.1e}")
    assert ok


def test_03_equality_endpoint(criterion):
    g = oracle.eval_expr(catalog.lookup("rem_coshalf").gap, {"x": 2 * math.pi / 3})
    ok = abs(g.value) <= 1e-12
    criterion(3, "rem_coshalf gap vanishes at x = 2pi/3", ok, f"gap {g.value:.2e}")
    assert ok


def test_04_degeneracy_orders(criterion):
    want = {"baricz_lo": 2, "jordan_hi": 3, "baricz_hi": 4, "thm25_c2": 4}
    got = {i: oracle.gap_order(catalog.lookup(i), "lower") for i in want}
    ok = all(got[i].order == k and got[i].residual <= 0.05 for i, k in want.items())
    detail = ", ".join(f"{i}={g.order} (res {g.residual:.1e})" for i, g in got.items())
    criterion(4, "gap orders 2/3/4/4 at endpoint 0", ok, detail)
    assert ok


RANGES = {
    Fn.SIN: (-4, 4), Fn.COS: (-4, 4), Fn.SINH: (-4, 4), Fn.COSH: (-4, 4),
    Fn.TAN: (-1.5, 1.5), Fn.TANH: (-4, 4), Fn.EXP: (-4, 4), Fn.LOG: (1e-3, 50),
    Fn.ARCSIN: (-0.999, 0.999), Fn.ARCTAN: (-4, 4), Fn.ARCSINH: (-4, 4), Fn.ARCTANH: (-0.999, 0.999),
}


def test_05_containment(criterion):
    rng = np.random.default_rng(12345)
    fns = list(Fn)
    n_total, violations = 100_000, 0
    per_fn = n_total // len(fns) + 1
    checked = 0
    for fn in fns:
        a, b = RANGES[fn]
        xs = rng.uniform(a, b, per_fn)
        orders = rng.integers(1, 65, per_fn)
        ref = oracle.eval_fn(fn, xs)
        for i in range(per_fn):
            if checked == n_total:
                break
            r = enclose(fn, Interval(float(xs[i])), int(orders[i]))
            if not r.lo <= ref.hi[i] <= r.hi:
                violations += 1
            checked += 1
    worst = 0.0
    for fn in (Fn.SIN, Fn.COS, Fn.SINH, Fn.COSH):
        for xv in np.linspace(-2, 2, 401):
            for order in (20, 24, 40):
                worst = max(worst, enclose(fn, Interval(float(xv)), order).width)
    ok = checked == n_total and violations == 0 and worst <= 1e-12
    criterion(5, "1e5 containment triples, width <= 1e-12 at order >= 20 on |x| <= 2", ok,
              f"{violations} violations in {checked}, widest {worst:.1e}")
    assert ok


def test_06_mutants(criterion):
    res = prover.mutate()
    margins = {i: o.oracle_margin for i, o in res}
    ok = all(o.kind == "Refuted" and o.oracle_margin >= 1e-6 for _, o in res) and len(res) >= 5
    worst = min(margins.values())
    criterion(6, "built-in mutants Refuted with margin >= 1e-6", ok, f"{len(res)} mutants, smallest margin {worst:.2e}")
    assert ok


def test_07_bernoulli_and_tanh(criterion):
    ok_b = bernoulli(0) == 1 and bernoulli(1) == Fraction(-1, 2) and bernoulli(2) == Fraction(1, 6)
    xs = np.linspace(-0.5, 0.5, 200)
    ref = oracle.eval_fn(Fn.TANH, xs)
    bad = 0
    for i, xv in enumerate(xs):
        q = Fraction(float(xv))
        s = sum(tanh_coeff(j) * q ** (2 * j + 1) for j in range(11))  # degree 21
        bound = abs(tanh_coeff(11)) * abs(q) ** 23
        err = abs(s - Fraction(float(ref.hi[i])) - Fraction(float(ref.lo[i])))
        if err > bound + Fraction(float(ref.err_bound[i])):
            bad += 1
    ok = ok_b and bad == 0
    criterion(7, "Bernoulli values and degree-21 tanh sums within the first omitted term", ok,
              f"{bad} of 200 points outside the bound")
    assert ok


def test_08_monotone_families(criterion):
    t_ranges = {"mono_cos_t": (1.01, 50.0), "mono_sin_t": (1.01, 50.0), "mono_cosh_t": (0.1, 50.0), "mono_sinh_t": (0.1, 50.0)}
    checks, failed = 0, []
    for fam in catalog.families():
        lo, hi = fam.x_domain.floats()
        for xv in (0.3, 0.8, 1.2):
            if not lo < xv < hi:
                continue
            rep = prover.monotone_check(fam, xv, np.linspace(*t_ranges[fam.id], 50))
            checks += 1
            if not rep.monotone:
                failed.append(f"{fam.id}@{xv}")
    ok = checks == 12 and not failed
    criterion(8, "monotone families on 50-point t grids", ok, f"{checks - len(failed)}/{checks} monotone")
    assert ok


def test_09_refinement(criterion):
    outs = {i: prover.verify(i) for i in ("lili_1", "lili_2")}
    box = prover.verified_box(catalog.lookup("lili_1"), ProverConfig())["x"]
    on_box = abs(box.lo - 0.01) < 1e-12 and abs(box.hi - (math.pi - 0.01)) < 1e-12
    g = oracle.eval_expr(catalog.lookup("lili_2").gap, {"x": 1.0})
    margin = g.value - g.err_bound
    ok = all(o.proven for o in outs.values()) and on_box and margin > 1e-3
    criterion(9, "lili_1 and lili_2 Proven on [0.01, pi - 0.01], margin at x = 1 above 1e-3", ok,
              f"margin {margin:.4e}")
    assert ok


def _verify_all_json() -> str:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(["verify", "--all", "--json"])
    assert code == 0
    return out.getvalue()


def test_10_determinism(criterion):
    a, b = _verify_all_json(), _verify_all_json()
    ok = a == b and len(a) > 0
    criterion(10, "two verify --all --json runs are byte-identical", ok, f"{len(a)} bytes")
    assert ok
