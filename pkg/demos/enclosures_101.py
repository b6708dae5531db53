"""
Enclosures and the point oracle
===============================

Two ways to evaluate an elementary function: an interval that is
guaranteed to contain the value, and a double-double estimate with an
error bound.  This script compares them.
"""

import numpy as np

from ineq import Fn, Interval, enclose, eval_fn

# %%
# Width of the sine enclosure at x = 1 as the series order grows.
# The order counts nonzero terms of the Maclaurin series.
for order in (2, 4, 8, 12, 16, 20, 24):
    r = enclose(Fn.SIN, Interval(1.0), order)
    print(f"order {order:2d}  [{r.lo:.17f}, {r.hi:.17f}]  width {r.width:.1e}")

# %%
# The oracle carries about 32 significant digits.
v = eval_fn(Fn.SIN, 1.0)
print("sin(1) =", repr(v.hi), "+", repr(v.lo), "+/-", v.err_bound)

# %%
# Enclosing a whole interval: the image of cos on [-0.5, 3.5] must reach
# both 1 and -1 because the interval passes through 0 and pi.
print(enclose(Fn.COS, Interval(-0.5, 3.5)))

# %%
# The oracle is vectorised, which makes tables cheap.
xs = np.linspace(0.1, 0.9, 5)
for x, t in zip(xs, eval_fn(Fn.ARCTANH, xs).hi):
    print(f"arctanh({x:.1f}) = {t:.16f}")
