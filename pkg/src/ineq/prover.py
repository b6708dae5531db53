"""Positivity prover by adaptive bisection over interval enclosures.

Each box in the work queue is attacked in increasing order of cost:

1. plain interval evaluation of the gap;
2. a gradient enclosure: a variable whose partial derivative has constant
   sign is pinned to the endpoint where the gap is smallest, and the gap is
   re-evaluated on the thinner box;
3. the mean-value form ``F(m) + sum_i G_i (X_i - m_i)``.

A box is closed when any of these has a positive lower bound.  Otherwise it
is bisected along the variable that is widest relative to its starting
width.  Boxes are processed breadth first, so the certificate does not
depend on timing.
"""

from __future__ import annotations

import json
import math
import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import oracle
from .catalog import InequalityRecord, MonotoneFamily, entries, lookup, lookup_family
from .enclosure import Dual, compile_grad, compile_value, eval_expr_interval
from .errors import BindingError, DegenerateSplit, DivisionByZeroInterval, DomainError, IntervalOverflow
from .expr import Expr
from .functions import DEFAULT_ORDER
from .interval import Interval, split

__all__ = [
    "ProverConfig",
    "ProofOutcome",
    "GapReport",
    "MonotonicityReport",
    "eval_expr_interval",
    "prove_positive",
    "verify",
    "verify_record",
    "verify_all",
    "monotone_check",
    "gap_table",
    "certificate",
    "certificate_json",
    "gap_csv",
    "MUTANT_IDS",
    "mutate",
]

PROVEN, REFUTED, INCONCLUSIVE = "Proven", "Refuted", "Inconclusive"

_EVAL_ERRORS = (DomainError, DivisionByZeroInterval, IntervalOverflow, ValueError, ZeroDivisionError)


@dataclass(frozen=True)
class ProverConfig:
    delta: float = 1e-2
    max_depth: int = 40
    order: int = DEFAULT_ORDER
    min_gap_report: bool = True
    # hard cap on processed boxes, a guard against runaway subdivision
    max_boxes: int = 200_000

    def __post_init__(self):
        if not self.delta > 0.0:
            raise ValueError("delta must be positive")
        if self.max_depth < 1 or self.order < 1:
            raise ValueError("max_depth and order must be positive")


@dataclass
class ProofOutcome:
    kind: str
    boxes: int = 0
    max_depth_used: int = 0
    min_gap_lower_bound: Optional[float] = None
    witness: Optional[dict[str, float]] = None
    oracle_margin: Optional[float] = None
    witness_err: Optional[float] = None
    stuck_box: Optional[dict[str, tuple[float, float]]] = None
    reason: str = ""

    @property
    def proven(self) -> bool:
        return self.kind == PROVEN


@dataclass(frozen=True)
class GapReport:
    id: str
    grid: np.ndarray
    gaps: np.ndarray
    errors: np.ndarray
    fixed: Mapping[str, float] = field(default_factory=dict)

    @property
    def min_gap(self) -> float:
        return float(np.min(self.gaps))

    @property
    def max_gap(self) -> float:
        return float(np.max(self.gaps))

    @property
    def mean_gap(self) -> float:
        return float(np.mean(self.gaps))


@dataclass(frozen=True)
class MonotonicityReport:
    family: str
    x: float
    t_grid: np.ndarray
    values: np.ndarray
    direction: str
    violations: int

    @property
    def monotone(self) -> bool:
        return self.violations == 0

    @property
    def verdict(self) -> str:
        return f"Monotone {self.direction}" if self.monotone else "NotMonotone"


# ---------------------------------------------------------------------------
# core search
# ---------------------------------------------------------------------------


def _box_dict(names, box) -> dict[str, tuple[float, float]]:
    return {v: (iv.lo, iv.hi) for v, iv in zip(names, box)}


class _Search:
    def __init__(self, e: Expr, names: tuple[str, ...], cfg: ProverConfig):
        self.e = e
        self.names = names
        self.cfg = cfg
        self.value = compile_value(e)
        self.grad = compile_grad(e, names)

    def env(self, box) -> dict[str, Interval]:
        return dict(zip(self.names, box))

    def denv(self, box) -> dict[str, Dual]:
        m = len(box)
        out = {}
        for i, (v, iv) in enumerate(zip(self.names, box)):
            unit = tuple(Interval(1.0) if j == i else Interval(0.0) for j in range(m))
            out[v] = Dual(iv, unit)
        return out

    def refute_at(self, point: Sequence[float]) -> Optional[ProofOutcome]:
        bind = dict(zip(self.names, (float(p) for p in point)))
        try:
            g = oracle.eval_expr(self.e, bind)
        except _EVAL_ERRORS:
            return None
        val = float(g.hi) + float(g.lo)
        if val + float(g.err_bound) < 0.0:
            return ProofOutcome(REFUTED, witness=bind, oracle_margin=-val, witness_err=float(g.err_bound))
        return None

    def lower_bound(self, box) -> tuple[float, Optional[float]]:
        """Best certified lower bound on the box and the point value at the midpoint (upper end)."""
        n = self.cfg.order
        f = self.value(self.env(box), n)
        best = f.lo
        if best > 0.0 or f.hi < 0.0:
            return best, f.hi
        d = self.grad(self.denv(box), n)
        best = max(best, d.v.lo)
        if best > 0.0:
            return best, None
        # pin monotone variables at the end where the gap is smallest
        pinned = list(box)
        free = []
        for i, (iv, g) in enumerate(zip(box, d.d)):
            if g.lo >= 0.0:
                pinned[i] = Interval(iv.lo)
            elif g.hi <= 0.0:
                pinned[i] = Interval(iv.hi)
            else:
                free.append(i)
        if len(free) < len(box):
            fp = self.value(self.env(pinned), n)
            best = max(best, fp.lo)
            if best > 0.0:
                return best, None
            if not free:
                return best, fp.hi
        # mean-value form on the pinned box
        mid = [Interval(iv.mid) if i in free else iv for i, iv in enumerate(pinned)]
        fm = self.value(self.env(mid), n)
        mv = fm
        for i in free:
            mv = mv + d.d[i] * (pinned[i] - mid[i].lo)
        best = max(best, mv.lo)
        return best, fm.hi

    def run(self, box0: Sequence[Interval]) -> ProofOutcome:
        cfg = self.cfg
        widths = [iv.width if iv.width > 0.0 else 1.0 for iv in box0]
        r = self.refute_at([iv.mid for iv in box0])
        if r is not None:
            r.boxes = 1
            return r
        queue = deque([(tuple(box0), 0)])
        boxes = 0
        max_depth = 0
        min_gap = math.inf
        while queue:
            box, depth = queue.popleft()
            boxes += 1
            max_depth = max(max_depth, depth)
            try:
                lb, point_hi = self.lower_bound(box)
            except _EVAL_ERRORS as exc:
                lb, point_hi = -math.inf, None
                reason = f"{type(exc).__name__}: {exc}"
            else:
                reason = "interval bound not positive"
            if lb > 0.0:
                min_gap = min(min_gap, lb)
                continue
            if point_hi is not None and point_hi < 0.0:
                r = self.refute_at([iv.mid for iv in box])
                if r is not None:
                    r.boxes, r.max_depth_used = boxes, max_depth
                    return r
            if depth >= cfg.max_depth or boxes >= cfg.max_boxes:
                return ProofOutcome(INCONCLUSIVE, boxes, max_depth, None,
                                    stuck_box=_box_dict(self.names, box),
                                    reason=f"depth limit reached ({reason})")
            i = max(range(len(box)), key=lambda j: (box[j].width / widths[j], -j))
            try:
                left, right = split(box[i])
            except DegenerateSplit:
                return ProofOutcome(INCONCLUSIVE, boxes, max_depth, None,
                                    stuck_box=_box_dict(self.names, box),
                                    reason=f"cannot split further ({reason})")
            queue.append((box[:i] + (left,) + box[i + 1:], depth + 1))
            queue.append((box[:i] + (right,) + box[i + 1:], depth + 1))
        return ProofOutcome(PROVEN, boxes, max_depth, min_gap)


def prove_positive(e: Expr, box: Mapping[str, Interval], cfg: ProverConfig = ProverConfig()) -> ProofOutcome:
    """Try to show ``e > 0`` everywhere on ``box``."""
    names = tuple(sorted(box))
    missing = e.variables() - set(names)
    if missing:
        raise BindingError(f"unbound variables {sorted(missing)}")
    ivs = [Interval.coerce(box[v]) for v in names]
    return _Search(e, names, cfg).run(ivs)


# ---------------------------------------------------------------------------
# catalog driven
# ---------------------------------------------------------------------------


def verified_box(rec: InequalityRecord, cfg: ProverConfig) -> dict[str, Interval]:
    return {v: d.shrunk(cfg.delta) for v, d in rec.domains}


def verify_record(rec: InequalityRecord, cfg: ProverConfig = ProverConfig()) -> ProofOutcome:
    try:
        box = verified_box(rec, cfg)
    except DomainError as exc:
        return ProofOutcome(INCONCLUSIVE, reason=str(exc))
    return prove_positive(rec.gap, box, cfg)


def verify(id_: str, cfg: ProverConfig = ProverConfig()) -> ProofOutcome:
    """Prove one catalog record on its delta-shrunk domain."""
    return verify_record(lookup(id_), cfg)


def _timed(args):
    id_, cfg = args
    t0 = time.perf_counter()
    out = verify(id_, cfg)
    return id_, out, time.perf_counter() - t0


def _threads() -> int:
    raw = os.environ.get("INEQ_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def verify_all(cfg: ProverConfig = ProverConfig(), ids: Optional[Iterable[str]] = None):
    """``[(id, outcome, seconds)]`` for every record, in id order.

    With ``INEQ_THREADS`` (default: CPU count) above one, records are
    spread over worker processes; results are collected in id order, so
    the summary does not depend on scheduling.
    """
    ids = [r.id for r in entries()] if ids is None else list(ids)
    for i in ids:
        lookup(i)
    jobs = [(i, cfg) for i in ids]
    workers = min(_threads(), len(jobs))
    if workers <= 1:
        return [_timed(j) for j in jobs]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_timed, jobs))


# ---------------------------------------------------------------------------
# mutation suite
# ---------------------------------------------------------------------------

MUTANT_IDS = ("rem_sandwich_hi", "thm21_lo", "lem33_i", "thm36_hi", "scale_sin")


def mutate(ids: Optional[Iterable[str]] = None, cfg: ProverConfig = ProverConfig()):
    """Verify the reversed form of each record; ``[(id, outcome)]``."""
    ids = MUTANT_IDS if ids is None else tuple(ids)
    return [(i, verify_record(lookup(i).flipped(), cfg)) for i in ids]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def gap_table(id_: str, n_points: int, cfg: ProverConfig = ProverConfig()) -> GapReport:
    """Oracle gaps on a uniform x grid over the delta-shrunk domain (k = 1/2)."""
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    rec = lookup(id_)
    box = verified_box(rec, cfg)
    xs = np.linspace(box["x"].lo, box["x"].hi, n_points)
    fixed = {v: 0.5 for v in rec.variables if v != "x"}
    bind = {"x": xs, **{v: np.full_like(xs, c) for v, c in fixed.items()}}
    g = oracle.eval_expr(rec.gap, bind)
    return GapReport(id_, xs, np.asarray(g.hi + g.lo), np.asarray(g.err_bound), fixed)


def monotone_check(family: MonotoneFamily | str, x: float, t_grid: Sequence[float]) -> MonotonicityReport:
    """Oracle values of ``fn(x/t)**t`` along ``t_grid`` and a direction verdict.

    Comparisons use ``t * log fn(x/t)``, which orders the values the same
    way and stays in range when the values themselves underflow.
    """
    fam = lookup_family(family) if isinstance(family, str) else family
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("t_grid must be a nonempty sequence")
    if np.any(np.diff(t) <= 0.0):
        raise ValueError("t_grid must be strictly increasing")
    t_lo, t_hi = fam.t_domain
    if not (np.all(t > t_lo) and np.all(t < t_hi)):
        raise DomainError(f"t_grid leaves {fam.id}'s t-domain ({t_lo}, {t_hi})")
    x_lo, x_hi = fam.x_domain.floats()
    if not x_lo < x < x_hi:
        raise DomainError(f"x = {x} outside {fam.id}'s x-domain ({x_lo}, {x_hi})")
    lv = oracle.eval_expr(fam.log_value, {"t": t, "x": np.full_like(t, float(x))})
    hi, lo, err = np.atleast_1d(lv.hi), np.atleast_1d(lv.lo), np.atleast_1d(lv.err_bound)
    # certified steps: difference minus both error bounds must have the family's sign
    step = (hi[1:] - hi[:-1]) + (lo[1:] - lo[:-1])
    slack = err[1:] + err[:-1] + 1e-30 * (np.abs(hi[1:]) + np.abs(hi[:-1]))
    if fam.direction == "increasing":
        bad = step - slack <= 0.0
    else:
        bad = step + slack >= 0.0
    values = np.exp(hi)
    return MonotonicityReport(fam.id, float(x), t, values, fam.direction, int(np.count_nonzero(bad)))


# ---------------------------------------------------------------------------
# serialisation
# ---------------------------------------------------------------------------


def certificate(id_: str, outcome: ProofOutcome, cfg: ProverConfig, elapsed: Optional[float] = None) -> dict:
    rec = lookup(id_)
    box = verified_box(rec, cfg)
    cert = {
        "id": id_,
        "outcome": outcome.kind,
        "domain_verified": {v: [iv.lo, iv.hi] for v, iv in box.items()},
        "delta": cfg.delta,
        "order": cfg.order,
        "boxes": outcome.boxes,
        "max_depth_used": outcome.max_depth_used,
        "min_gap_lower_bound": outcome.min_gap_lower_bound,
        "citation": rec.citation,
    }
    if outcome.kind == REFUTED:
        cert["witness"] = outcome.witness
        cert["oracle_margin"] = outcome.oracle_margin
    if outcome.kind == INCONCLUSIVE:
        cert["stuck_box"] = {v: list(b) for v, b in (outcome.stuck_box or {}).items()}
        cert["reason"] = outcome.reason
    if elapsed is not None:
        cert["elapsed_ms"] = round(elapsed * 1000.0, 3)
    return cert


def certificate_json(certs: Sequence[dict]) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(list(certs), indent=2, sort_keys=True) + "\n"


def gap_csv(report: GapReport) -> str:
    lines = ["x,gap"]
    for xv, gv in zip(report.grid, report.gaps):
        lines.append(f"{xv:.17g},{gv:.17g}")
    return "\n".join(lines) + "\n"
