"""
Certifying bounds for sin(x)/x
==============================

Each catalog record is an inequality between two expressions on a
domain.  The prover shows that the gap (the larger side minus the smaller)
is positive by bisecting the domain until interval evaluation settles
every piece.
"""

from ineq import catalog, oracle, prover
from ineq.prover import ProverConfig

cfg = ProverConfig()

# %%
# Three bounds on sinc, from coarse to sharp.
for id_ in ("jordan_lo", "baricz_lo", "baricz_hi"):
    rec = catalog.lookup(id_)
    out = prover.verify(id_, cfg)
    print(f"{id_:10s} {rec.statement():40s} {out.kind}: {out.boxes} boxes, min gap >= {out.min_gap_lower_bound:.2e}")

# %%
# The domains are open and the two sides meet at 0, so the proof runs on a
# box shrunk by delta.  How fast the gap closes is estimated by the oracle.
for id_ in ("baricz_lo", "jordan_hi", "baricz_hi"):
    g = oracle.gap_order(catalog.lookup(id_), "lower")
    print(f"{id_:10s} gap ~ x^{g.order}  (fitted slope {g.slope:.4f})")

# %%
# A gap table for the upper bound (2 + cos x)/3.
rep = prover.gap_table("baricz_hi", 7)
print(prover.gap_csv(rep), end="")

# %%
# A certificate is plain JSON.
print(prover.certificate_json([prover.certificate("baricz_hi", prover.verify("baricz_hi"), cfg)]), end="")
