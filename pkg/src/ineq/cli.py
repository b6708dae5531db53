"""Command-line front end: ``ineq list|verify|gaps|mono|mutate|bernoulli``.

Exit status is 0 when every requested check behaved as expected, 1 when at
least one did not (a Refuted or Inconclusive record, a surviving mutant, a
non-monotone family), and 2 for usage errors and unknown ids.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import catalog, prover
from .errors import DomainError, IneqError, UnknownId
from .functions import bernoulli

OK, FAILED, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would call sys.exit(2) itself
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0.0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ineq", description="Certified checks of trigonometric and hyperbolic inequalities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("list", help="show the catalog")
    s.add_argument("--json", action="store_true", help="emit a JSON array")

    s = sub.add_parser("verify", help="prove records by interval bisection")
    which = s.add_mutually_exclusive_group(required=True)
    which.add_argument("--id", dest="ids", action="append", metavar="ID")
    which.add_argument("--all", action="store_true")
    s.add_argument("--delta", type=_positive_float, default=1e-2)
    s.add_argument("--order", type=_positive_int, default=24)
    s.add_argument("--max-depth", type=_positive_int, default=40)
    s.add_argument("--json", nargs="?", const="-", metavar="PATH",
                   help="write certificates as JSON to PATH (stdout if omitted)")
    s.add_argument("--timings", action="store_true", help="include elapsed_ms in certificates")

    s = sub.add_parser("gaps", help="oracle gap table on a uniform grid")
    s.add_argument("--id", required=True)
    s.add_argument("--points", type=int, required=True)
    s.add_argument("--delta", type=_positive_float, default=1e-2)
    s.add_argument("--csv", metavar="PATH")

    s = sub.add_parser("mono", help="check a monotone family along a t grid")
    s.add_argument("--family", required=True)
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--t-min", type=float, required=True)
    s.add_argument("--t-max", type=float, required=True)
    s.add_argument("--steps", type=_positive_int, required=True, help="number of grid points")

    s = sub.add_parser("mutate", help="check that reversed inequalities are refuted")
    s.add_argument("--all", action="store_true", help="reverse every catalog record, not just the built-in set")

    s = sub.add_parser("bernoulli", help="exact Bernoulli number")
    s.add_argument("--n", type=int, required=True)
    return p


def _fmt_gap(v: Optional[float]) -> str:
    return "-" if v is None else f"{v:.6e}"


def _cmd_list(args) -> int:
    recs = catalog.entries()
    if args.json:
        print(json.dumps([r.to_json() for r in recs], indent=2, sort_keys=True))
        return OK
    for r in recs:
        doms = " ".join(f"{v} in {d.describe()}" for v, d in r.domains)
        print(f"{r.id}\t{r.statement()}\t{doms}")
    for f in catalog.families():
        print(f"{f.id}\t{f.direction} in t on {f.t_domain}\tx in {f.x_domain.describe()}")
    return OK


def _cmd_verify(args) -> int:
    cfg = prover.ProverConfig(delta=args.delta, order=args.order, max_depth=args.max_depth)
    ids = [r.id for r in catalog.entries()] if args.all else args.ids
    for i in ids:
        # raises UnknownId, or DomainError when delta swallows the domain
        prover.verified_box(catalog.lookup(i), cfg)
    results = prover.verify_all(cfg, ids)
    certs = []
    worst = OK
    # JSON on stdout replaces the plain lines so the output stays parseable
    plain = sys.stderr if args.json == "-" else sys.stdout
    for id_, out, secs in results:
        print(f"{id_}\t{out.kind}\t{_fmt_gap(out.min_gap_lower_bound)}\t{secs * 1000.0:.0f}", file=plain)
        certs.append(prover.certificate(id_, out, cfg, secs if args.timings else None))
        if not out.proven:
            worst = FAILED
    proven = sum(out.proven for _, out, _ in results)
    print(f"{proven}/{len(results)} Proven", file=sys.stderr)
    if args.json is not None:
        text = prover.certificate_json(certs)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
    return worst


def _cmd_gaps(args) -> int:
    if args.points < 2:
        raise _UsageError("--points must be at least 2")
    rep = prover.gap_table(args.id, args.points, prover.ProverConfig(delta=args.delta))
    text = prover.gap_csv(rep)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"min {rep.min_gap:.17g} max {rep.max_gap:.17g} mean {rep.mean_gap:.17g}", file=sys.stderr)
    return OK if rep.min_gap >= 0.0 else FAILED


def _cmd_mono(args) -> int:
    fam = catalog.lookup_family(args.family)
    if args.steps == 1:
        grid = np.array([args.t_min])
    else:
        if not args.t_min < args.t_max:
            raise _UsageError("--t-min must be below --t-max")
        grid = np.linspace(args.t_min, args.t_max, args.steps)
    rep = prover.monotone_check(fam, args.x, grid)
    for t, v in zip(rep.t_grid, rep.values):
        print(f"{t:.17g}\t{v:.17g}")
    print(f"{fam.id}\tx={args.x:g}\t{rep.verdict}\tviolations={rep.violations}")
    return OK if rep.monotone else FAILED


def _cmd_mutate(args) -> int:
    ids = [r.id for r in catalog.entries()] if args.all else None
    worst = OK
    for id_, out in prover.mutate(ids):
        margin = "-" if out.oracle_margin is None else f"{out.oracle_margin:.6e}"
        where = "" if out.witness is None else " ".join(f"{k}={v:.17g}" for k, v in sorted(out.witness.items()))
        print(f"{id_}~flip\t{out.kind}\t{margin}\t{where}")
        if out.kind != prover.REFUTED:
            worst = FAILED
    return worst


def _cmd_bernoulli(args) -> int:
    q = bernoulli(args.n)
    print(q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}")
    return OK


_COMMANDS = {
    "list": _cmd_list,
    "verify": _cmd_verify,
    "gaps": _cmd_gaps,
    "mono": _cmd_mono,
    "mutate": _cmd_mutate,
    "bernoulli": _cmd_bernoulli,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and execute; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return USAGE
    except UnknownId as exc:
        print(f"ineq: unknown id {exc.args[0]!r}", file=sys.stderr)
        return USAGE
    except (DomainError, ValueError, IneqError) as exc:
        print(f"ineq: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
