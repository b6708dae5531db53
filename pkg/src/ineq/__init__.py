"""Certified checks of trigonometric and hyperbolic inequalities.

Layers, bottom up:

* :mod:`ineq.interval`: outward-rounded interval arithmetic;
* :mod:`ineq.functions`: series enclosures of elementary functions and
  exact Bernoulli numbers;
* :mod:`ineq.oracle`: double-double point evaluation with error bounds;
* :mod:`ineq.catalog`: the inequalities as expression trees;
* :mod:`ineq.prover`: bisection prover, gap tables, monotonicity checks;
* :mod:`ineq.cli`: the ``ineq`` command.
"""

from .errors import (
    BindingError,
    DegenerateSplit,
    DivisionByZeroInterval,
    DomainError,
    IneqError,
    IntervalOverflow,
    NotDegenerate,
    Unsupported,
    UnknownId,
)
from .interval import Interval, arith, pow_int, split, sqrt_iv
from .functions import Fn, FnId, bernoulli, enclose, tanh_coeff
from .oracle import ExtendedValue, eval_expr, eval_fn, gap_order
from .catalog import InequalityRecord, MonotoneFamily, entries, families, gap_expr, lookup
from .prover import (
    GapReport,
    MonotonicityReport,
    ProofOutcome,
    ProverConfig,
    eval_expr_interval,
    gap_table,
    monotone_check,
    prove_positive,
    verify,
    verify_all,
)

__version__ = "0.1.0"

__all__ = [
    "BindingError",
    "DegenerateSplit",
    "DivisionByZeroInterval",
    "DomainError",
    "IneqError",
    "IntervalOverflow",
    "NotDegenerate",
    "Unsupported",
    "UnknownId",
    "Interval",
    "arith",
    "pow_int",
    "split",
    "sqrt_iv",
    "Fn",
    "FnId",
    "bernoulli",
    "enclose",
    "tanh_coeff",
    "ExtendedValue",
    "eval_expr",
    "eval_fn",
    "gap_order",
    "InequalityRecord",
    "MonotoneFamily",
    "entries",
    "families",
    "gap_expr",
    "lookup",
    "GapReport",
    "MonotonicityReport",
    "ProofOutcome",
    "ProverConfig",
    "eval_expr_interval",
    "gap_table",
    "monotone_check",
    "prove_positive",
    "verify",
    "verify_all",
]
