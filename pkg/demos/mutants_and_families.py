"""
Mutants and monotone families
=============================

A prover that proves everything is useless.  Reversing an inequality
should make it fail with a concrete counterexample, and the oracle has to
confirm that counterexample beyond its own error bound.
"""

import numpy as np

from ineq import catalog, prover

# %%
# Reversed inequalities and the witnesses found for them.
for id_, out in prover.mutate():
    w = ", ".join(f"{k} = {v:.6f}" for k, v in sorted(out.witness.items()))
    print(f"{id_}~flip  {out.kind}  at {w}  margin {out.oracle_margin:.3e}")

# %%
# The families t -> f(x/t)**t are checked on a grid of t, comparing
# t*log f(x/t) with certified signs for every step.
t_grid = {"mono_cos_t": np.linspace(1.01, 50, 50), "mono_sin_t": np.linspace(1.01, 50, 50),
          "mono_cosh_t": np.linspace(0.1, 50, 50), "mono_sinh_t": np.linspace(0.1, 50, 50)}
for fam in catalog.families():
    for x in (0.3, 0.8, 1.2):
        rep = prover.monotone_check(fam, x, t_grid[fam.id])
        print(f"{fam.id:12s} x = {x}: {rep.verdict}")
