"""Grid operators: product-integration RL integrals and discrete Caputo derivatives.

Errors are measured against the closed forms for powers of t.
"""

import numpy as np

from fracbvp import Grid, GridFunction, caputo_derivative, rl_integral, rl_integral_nodes, rl_integral_of_monomial
from fracbvp.special import caputo_of_monomial

ns = [129, 257, 513, 1025, 2049]

## RL integral of s^2 at t = 1
# second-order product integration: errors drop by ~4 per doubling
for p in (0.5, 4 / 3, 1.5):
    exact = rl_integral_of_monomial(2, p, 1.0)
    errs = np.array([abs(rl_integral(GridFunction.from_callable(Grid(n), lambda s: s**2), p, 1.0) - exact)
                     for n in ns])
    print(f"p = {p:.4f}  errors", np.array2string(errs, precision=2), " ratios", np.round(errs[:-1] / errs[1:], 2))

## RL integral at every node at once
g = Grid(9)
f = GridFunction.from_callable(g, np.cos)
print("I^1.5 cos at nodes:", np.round(rl_integral_nodes(f, 1.5), 6))

## Caputo derivative of s^2.5, orders 1/2 (L1-2 scheme) and 4/3
for alpha in (0.5, 4 / 3):
    exact = caputo_of_monomial(3.5, alpha, 0.5)
    errs = np.array([abs(caputo_derivative(GridFunction.from_callable(Grid(n), lambda s: s**2.5), alpha, 0.5) - exact)
                     for n in ns])
    print(f"alpha = {alpha:.4f} errors", np.array2string(errs, precision=2), " ratios", np.round(errs[:-1] / errs[1:], 2))

## Data that starts like t^q
# t^(4/3) has an unbounded second derivative at the origin, which spoils the
# scheme's order; the start_exponent option treats that term exactly
q = 4 / 3
exact_x = caputo_of_monomial(q + 1, 0.5, 0.5) + caputo_of_monomial(2, 0.5, 0.5)
for n in (65, 257, 1025):
    x = GridFunction.from_callable(Grid(n), lambda s: s**q + s)
    plain = abs(caputo_derivative(x, 0.5, 0.5) - exact_x)
    split = abs(caputo_derivative(x, 0.5, 0.5, start_exponent=q) - exact_x)
    print(f"n = {n:5d}  plain {plain:.2e}  with start_exponent {split:.2e}")
