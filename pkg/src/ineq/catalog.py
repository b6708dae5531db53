"""The inequality catalog.

Each :class:`InequalityRecord` states ``lhs REL rhs`` over a box of open
(occasionally half-closed) intervals.  Endpoints are expressions, so
``pi/2`` or ``sqrt(27/5)`` stay exact until someone evaluates them.

Endpoints where both sides meet are flagged with the order of contact
(``gap ~ c * dist**k``); the oracle re-derives those orders in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional

from . import expr as E
from .enclosure import compile_value
from .errors import DomainError, UnknownId
from .expr import PI, Expr, const, var
from .functions import Fn
from .interval import Interval, _dn, _up

__all__ = [
    "Domain",
    "InequalityRecord",
    "MonotoneFamily",
    "entries",
    "families",
    "lookup",
    "lookup_family",
    "gap_expr",
    "RELATIONS",
]

RELATIONS = ("lt", "le", "gt", "ge")
_FLIP = {"lt": "ge", "le": "gt", "gt": "le", "ge": "lt"}
_SYMBOL = {"lt": "<", "le": "<=", "gt": ">", "ge": ">="}


@dataclass(frozen=True)
class Domain:
    lo: Expr
    hi: Expr
    lo_open: bool = True
    hi_open: bool = True

    def enclosure(self) -> tuple[Interval, Interval]:
        """Certified intervals around each endpoint."""
        return compile_value(self.lo)({}, 24), compile_value(self.hi)({}, 24)

    def floats(self) -> tuple[float, float]:
        a, b = self.enclosure()
        return a.mid, b.mid

    def shrunk(self, delta: float) -> Interval:
        """Closed box strictly inside the domain, ``delta`` in from each open end."""
        a, b = self.enclosure()
        lo = _up(a.hi + delta) if self.lo_open else a.hi
        hi = _dn(b.lo - delta) if self.hi_open else b.lo
        if not lo < hi:
            raise DomainError(f"delta {delta} leaves nothing of [{a.hi}, {b.lo}]")
        return Interval(lo, hi)

    def describe(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{self.lo}, {self.hi}{right}"


@dataclass(frozen=True)
class InequalityRecord:
    id: str
    relation: str
    lhs: Expr
    rhs: Expr
    domains: tuple[tuple[str, Domain], ...]
    degenerate_endpoints: tuple[tuple[str, str, int], ...]
    citation: str
    group: str = ""

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"{self.id}: unknown relation {self.relation!r}")
        declared = {v for v, _ in self.domains}
        used = self.lhs.variables() | self.rhs.variables()
        if not used <= declared:
            raise ValueError(f"{self.id}: undeclared variables {sorted(used - declared)}")
        for v, side, k in self.degenerate_endpoints:
            if v not in declared or side not in ("lower", "upper") or k < 1:
                raise ValueError(f"{self.id}: bad degenerate endpoint {(v, side, k)}")

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.domains)

    def domain(self, v: str) -> Domain:
        return dict(self.domains)[v]

    def domain_floats(self, v: str) -> tuple[float, float]:
        return self.domain(v).floats()

    def domain_float_map(self) -> dict[str, tuple[float, float]]:
        return {v: d.floats() for v, d in self.domains}

    def expected_order(self, v: str, side: str) -> Optional[int]:
        for w, s, k in self.degenerate_endpoints:
            if (w, s) == (v, side):
                return k
        return None

    @cached_property
    def gap(self) -> Expr:
        return gap_expr(self)

    @property
    def strict(self) -> bool:
        return self.relation in ("lt", "gt")

    def flipped(self) -> "InequalityRecord":
        """The reversed claim (``<`` becomes ``>=`` and so on)."""
        return InequalityRecord(
            self.id + "~flip", _FLIP[self.relation], self.lhs, self.rhs, self.domains, (), self.citation, self.group
        )

    def statement(self) -> str:
        return f"{self.lhs} {_SYMBOL[self.relation]} {self.rhs}"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "relation": self.relation,
            "lhs": self.lhs.to_sexpr(),
            "rhs": self.rhs.to_sexpr(),
            "domain": {
                v: {
                    "lo": d.lo.to_sexpr(),
                    "hi": d.hi.to_sexpr(),
                    "lo_open": d.lo_open,
                    "hi_open": d.hi_open,
                }
                for v, d in self.domains
            },
            "citation": self.citation,
        }


@dataclass(frozen=True)
class MonotoneFamily:
    """``value(t, x) = fn(x/t) ** t`` as a function of ``t`` at fixed ``x``."""

    id: str
    fn: Fn
    direction: str
    t_domain: tuple[float, float]
    x_domain: Domain
    citation: str
    value: Expr = field(init=False)
    log_value: Expr = field(init=False)

    def __post_init__(self):
        t, x = var("t"), var("x")
        lv = t * E.log(E.apply(self.fn, x / t))
        object.__setattr__(self, "log_value", lv)
        object.__setattr__(self, "value", E.exp(lv))


def gap_expr(rec: InequalityRecord) -> Expr:
    """``rhs - lhs`` for lt/le and ``lhs - rhs`` for gt/ge; positive means true."""
    if rec.relation in ("lt", "le"):
        return rec.rhs - rec.lhs
    return rec.lhs - rec.rhs


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------

x = var("x")
k = var("k")
ZERO, ONE = const(0), const(1)
HALF_PI = PI / 2
QUARTER_PI = PI / 4


def _q(a: int, b: int = 1) -> Expr:
    return const(Fraction(a, b))


def sinc(u: Expr) -> Expr:
    return E.sin(u) / u


def _dom(lo: Expr, hi: Expr, lo_open: bool = True, hi_open: bool = True) -> Domain:
    return Domain(lo, hi, lo_open, hi_open)


X_HALF_PI = (("x", _dom(ZERO, HALF_PI)),)
X_PI = (("x", _dom(ZERO, PI)),)
X_UNIT = (("x", _dom(ZERO, ONE)),)
X_QUARTER_PI = (("x", _dom(ZERO, QUARTER_PI)),)
X_CHAIN = (("x", _dom(ZERO, E.sqrt(_q(27, 5)))),)
K_UNIT = ("k", _dom(ZERO, ONE))

cos_half_sq = E.cos(x / 2) ** 2
half_cos_mean = (1 + E.cos(x)) / 2
third_cos_mean = (2 + E.cos(x)) / 3
qcx = (1 + 2 * E.cos(x)) / 3 + x * E.sin(x) / 6
lili_p = E.rpow(1 + 3 * (x / PI) ** 4, Fraction(-1, 2))
one_minus_sq_pi = 1 - x ** 2 / PI ** 2
sech = 1 / E.cosh(x)
x_over_sinh = x / E.sinh(x)
ratio_35 = E.cos(x) / E.sqrt(E.cos(x) ** 2 - E.sin(x) ** 2)


def _lo(order: int) -> tuple[str, str, int]:
    return ("x", "lower", order)


def _hi(order: int) -> tuple[str, str, int]:
    return ("x", "upper", order)


def _rec(id_, rel, lhs, rhs, domains, degenerate, citation, group):
    return InequalityRecord(id_, rel, lhs, rhs, domains, tuple(degenerate), citation, group)


_SINC = "sinc bounds"
_HYP = "hyperbolic bounds"
_INV = "inverse-function bounds"
_SCALE = "two-variable scaling"

_RECORDS = (
    # sinc bounds ---------------------------------------------------------
    _rec("jordan_lo", "le", 2 * x / PI, E.sin(x), X_HALF_PI, [_lo(1), _hi(1)],
         "linear lower bound: 2x/pi <= sin x on (0, pi/2)", _SINC),
    _rec("jordan_hi", "le", E.sin(x), x, X_HALF_PI, [_lo(3)],
         "linear upper bound: sin x <= x on (0, pi/2)", _SINC),
    _rec("baricz_lo", "le", half_cos_mean, sinc(x), X_HALF_PI, [_lo(2)],
         "sinc lower bound (1 + cos x)/2", _SINC),
    _rec("baricz_hi", "le", sinc(x), third_cos_mean, X_PI, [_lo(4)],
         "sinc upper bound (2 + cos x)/3 on (0, pi)", _SINC),
    _rec("qcx_lo", "le", qcx, sinc(x), X_HALF_PI, [_lo(4)],
         "sinc lower bound (1 + 2 cos x)/3 + x sin x/6", _SINC),
    _rec("rem_g1g2", "gt", qcx, half_cos_mean, X_HALF_PI, [_lo(2)],
         "(1 + 2 cos x)/3 + x sin x/6 improves on (1 + cos x)/2", _SINC),
    _rec("rem_coshalf", "le", third_cos_mean, E.cos(x / 2), (("x", _dom(ZERO, 2 * PI / 3)),), [_lo(2), _hi(1)],
         "(2 + cos x)/3 <= cos(x/2), equality at x = 2pi/3", _SINC),
    _rec("rem_cossq_cos", "gt", cos_half_sq, E.cos(x), X_HALF_PI, [_lo(2)],
         "cos^2(x/2) = (1 + cos x)/2 > cos x", _SINC),
    _rec("rem_sandwich_hi", "lt", sinc(x), E.cos(x / 2), X_HALF_PI, [_lo(2)],
         "sin x/x < cos(x/2)", _SINC),
    _rec("thm21_lo", "lt", sech, sinc(x), X_HALF_PI, [_lo(2)],
         "1/cosh x < sin x/x", _SINC),
    _rec("thm21_hi", "lt", sinc(x), x_over_sinh, X_HALF_PI, [_lo(4)],
         "sin x/x < x/sinh x", _SINC),
    _rec("thm11_lo", "lt", x_over_sinh ** 2, sinc(x), X_HALF_PI, [_lo(2)],
         "x^2/sinh^2 x < sin x/x", _SINC),
    _rec("thm25_c1", "le", cos_half_sq, sinc(x), X_CHAIN, [_lo(2)],
         "chain link cos^2(x/2) <= sin x/x on (0, sqrt(27/5))", _SINC),
    _rec("thm25_c2", "le", sinc(x), E.cos(x / 3) ** 3, X_CHAIN, [_lo(4)],
         "chain link sin x/x <= cos^3(x/3) on (0, sqrt(27/5))", _SINC),
    _rec("thm25_c3", "le", E.cos(x / 3) ** 3, third_cos_mean, X_CHAIN, [_lo(4)],
         "chain link cos^3(x/3) <= (2 + cos x)/3 on (0, sqrt(27/5))", _SINC),
    _rec("thm31_lo", "le", 1 - x ** 2 / 6, sinc(x), X_HALF_PI, [_lo(4)],
         "polynomial bracket 1 - x^2/6 <= sin x/x", _SINC),
    _rec("thm31_hi", "le", sinc(x), 1 - 2 * x ** 2 / (3 * PI ** 2), X_HALF_PI, [_lo(2)],
         "polynomial bracket sin x/x <= 1 - 2x^2/(3 pi^2)", _SINC),
    _rec("lili_1", "lt", sinc(x), lili_p * one_minus_sq_pi, X_PI, [_lo(2), _hi(3)],
         "sin x/x < p(x)(1 - x^2/pi^2), p(x) = (1 + 3(x/pi)^4)^(-1/2)", _SINC),
    _rec("lili_2", "lt", lili_p * one_minus_sq_pi, one_minus_sq_pi, X_PI, [_lo(4), _hi(1)],
         "p(x)(1 - x^2/pi^2) < 1 - x^2/pi^2", _SINC),
    # hyperbolic bounds -----------------------------------------------------
    _rec("thm12_lo", "lt", E.rpow(sech, Fraction(1, 2)), x_over_sinh, X_UNIT, [_lo(2)],
         "(1/cosh x)^(1/2) < x/sinh x on (0, 1)", _HYP),
    _rec("thm12_hi", "lt", x_over_sinh, E.rpow(sech, Fraction(1, 4)), X_UNIT, [_lo(2)],
         "x/sinh x < (1/cosh x)^(1/4) on (0, 1)", _HYP),
    _rec("thm23_i", "le", third_cos_mean, x_over_sinh, X_UNIT, [_lo(4)],
         "(2 + cos x)/3 <= x/sinh x on (0, 1)", _HYP),
    _rec("thm23_ii", "le", sech, half_cos_mean, X_HALF_PI, [_lo(2)],
         "1/cosh x <= (1 + cos x)/2", _HYP),
    _rec("thm23_iii_a", "le", 1 / (1 + E.sin(x) ** 2), (1 + E.cos(x) ** 2) / 2, X_HALF_PI, [_lo(2), _hi(2)],
         "1/(1 + sin^2 x) <= (1 + cos^2 x)/2", _HYP),
    _rec("thm23_iii_b", "le", (1 + E.cos(x) ** 2) / 2, half_cos_mean, X_HALF_PI, [_lo(2), _hi(1)],
         "(1 + cos^2 x)/2 <= (1 + cos x)/2", _HYP),
    _rec("aux_sin_tanh", "le", E.tanh(x), E.sin(x), X_UNIT, [_lo(3)],
         "tanh x <= sin x on (0, 1)", _HYP),
    _rec("lem33_i", "lt", E.sinh(x), x + x ** 3 / 5, X_UNIT, [_lo(3)],
         "sinh x < x + x^3/5 on (0, 1)", _HYP),
    _rec("lem33_ii", "lt", E.cosh(x), 1 + 5 * x ** 2 / 9, X_UNIT, [_lo(2)],
         "cosh x < 1 + 5x^2/9 on (0, 1)", _HYP),
    _rec("lem33_iii", "lt", sech, 1 - x ** 2 / 3, X_UNIT, [_lo(2)],
         "1/cosh x < 1 - x^2/3 on (0, 1)", _HYP),
    _rec("aux_lbsinh", "lt", x + x ** 3 / 6, E.sinh(x), X_UNIT, [_lo(5)],
         "x + x^3/6 < sinh x", _HYP),
    _rec("thm35", "lt", E.cosh(x), ratio_35, X_QUARTER_PI, [_lo(4)],
         "cosh x < cos x/sqrt(cos^2 x - sin^2 x) on (0, pi/4)", _HYP),
    _rec("thm36_lo", "lt", E.rpow(E.cos(x), Fraction(-2, 3)), E.cosh(x), X_QUARTER_PI, [_lo(2)],
         "(cos x)^(-2/3) < cosh x on (0, pi/4)", _HYP),
    _rec("thm36_hi", "lt", E.cosh(x), 1 / E.cos(x), X_QUARTER_PI, [_lo(4)],
         "cosh x < 1/cos x on (0, pi/4)", _HYP),
    _rec("note_cmp", "le", 1 / E.cos(x), ratio_35, X_QUARTER_PI, [_lo(4)],
         "1/cos x <= cos x/sqrt(cos^2 x - sin^2 x) on (0, pi/4)", _HYP),
    # inverse functions -----------------------------------------------------
    _rec("inv_i", "le", x / E.arcsin(x), sinc(x), X_UNIT, [_lo(4)],
         "x/arcsin x <= sin x/x on (0, 1)", _INV),
    _rec("inv_ii", "le", x / E.arcsinh(x), E.sinh(x) / x, X_UNIT, [_lo(4)],
         "x/arcsinh x <= sinh x/x on (0, 1)", _INV),
    _rec("inv_iii", "le", x / E.arctan(x), E.tan(x) / x, X_UNIT, [_lo(4)],
         "x/arctan x <= tan x/x on (0, 1)", _INV),
    _rec("inv_iv", "le", x / E.arctanh(x), E.tanh(x) / x, X_UNIT, [_lo(4)],
         "x/arctanh x <= tanh x/x on (0, 1)", _INV),
    # two variables ---------------------------------------------------------
    _rec("scale_sin", "le", sinc(x), sinc(k * x), (("x", _dom(ZERO, PI)), K_UNIT),
         [_lo(2), ("k", "upper", 1)],
         "sin x/x <= sin(kx)/(kx) for k in (0, 1), x in (0, pi)", _SCALE),
    _rec("scale_sinh", "ge", E.sinh(x) / x, E.sinh(k * x) / (k * x),
         (("x", _dom(ZERO, const(10), hi_open=False)), K_UNIT),
         [_lo(2), ("k", "upper", 1)],
         "sinh x/x >= sinh(kx)/(kx) for k in (0, 1), x in (0, 10]", _SCALE),
    _rec("scale_tanh", "le", E.tanh(x) / x, E.tanh(k * x) / (k * x), (("x", _dom(ZERO, ONE)), K_UNIT),
         [_lo(2), ("k", "upper", 1)],
         "tanh x/x <= tanh(kx)/(kx) for k in (0, 1), x in (0, 1)", _SCALE),
)

_FAMILIES = (
    MonotoneFamily("mono_cos_t", Fn.COS, "increasing", (1.0, float("inf")), _dom(ZERO, HALF_PI),
                   "t -> cos^t(x/t) increases on (1, inf) for x in (0, pi/2)"),
    MonotoneFamily("mono_cosh_t", Fn.COSH, "decreasing", (0.0, float("inf")), _dom(ZERO, HALF_PI),
                   "t -> cosh^t(x/t) decreases on (0, inf) for x in (0, pi/2)"),
    MonotoneFamily("mono_sin_t", Fn.SIN, "decreasing", (1.0, float("inf")), _dom(ZERO, HALF_PI),
                   "t -> sin^t(x/t) decreases on (1, inf) for x in (0, pi/2)"),
    MonotoneFamily("mono_sinh_t", Fn.SINH, "decreasing", (0.0, float("inf")), _dom(ZERO, HALF_PI),
                   "t -> sinh^t(x/t) decreases on (0, inf) for x in (0, pi/2)"),
)


def _real_power_bases(e: Expr):
    if e.op == "pow_real":
        yield e.args[0]
    for a in e.args:
        yield from _real_power_bases(a)


def _load_check(records, delta: float = 1e-2) -> None:
    # every real-power base must be provably positive on the delta-shrunk box
    for r in records:
        env = {v: d.shrunk(delta) for v, d in r.domains}
        for side in (r.lhs, r.rhs):
            for base in _real_power_bases(side):
                lo = compile_value(base)(env, 24).lo
                if not lo > 0.0:
                    raise DomainError(f"{r.id}: real-power base {base} not positive on its domain")


_BY_ID = {r.id: r for r in _RECORDS}
_FAMILY_BY_ID = {f.id: f for f in _FAMILIES}
if len(_BY_ID) != len(_RECORDS):  # pragma: no cover
    raise RuntimeError("duplicate record ids")
_load_check(_RECORDS)


def entries() -> tuple[InequalityRecord, ...]:
    """Every inequality record, sorted by id."""
    return tuple(sorted(_RECORDS, key=lambda r: r.id))


def families() -> tuple[MonotoneFamily, ...]:
    """The four monotone families, sorted by id."""
    return tuple(sorted(_FAMILIES, key=lambda f: f.id))


def lookup(id_: str) -> InequalityRecord:
    try:
        return _BY_ID[id_]
    except KeyError:
        raise UnknownId(id_) from None


def lookup_family(id_: str) -> MonotoneFamily:
    try:
        return _FAMILY_BY_ID[id_]
    except KeyError:
        raise UnknownId(id_) from None
