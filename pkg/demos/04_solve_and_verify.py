"""Picard iteration on the first built-in problem, then residual checks."""

import numpy as np

from fracbvp import SolverConfig, solve, solution_radius, verify_solution
from fracbvp.builtin import example1, example3

## Iterate
spec = example1()
report = solve(spec, SolverConfig(grid_n=1025, tol=1e-12))
print("iterations:", report.iterations, "converged:", report.converged)
print("successive differences:", np.array2string(np.array(report.diffs), precision=2))
print("ratios:", np.array2string(np.array(report.ratios), precision=3), " bound L*Omega =", round(report.contraction, 4))
print("a-posteriori error bound:", report.aposteriori_bound)

## The solution
x = report.solution
for t in (0.0, 0.25, 0.5, 0.75, 1.0):
    print(f"x({t:.2f}) = {x(t): .10f}")
print("sup |x| =", x.sup_norm(), "<= radius", solution_radius(spec))

## Residuals
print(verify_solution(spec, x))

## Refinement: residuals shrink with the grid
for n in (257, 513, 1025, 2049):
    r = verify_solution(spec, solve(spec, SolverConfig(grid_n=n, tol=1e-12)).solution)
    print(f"n = {n:5d}  bc1 {r.bc1_residual:.2e}  bc2 {r.bc2_residual:.2e}  ode {r.ode_residual:.2e}")

## A second problem
r3 = solve(example3(), SolverConfig(grid_n=1025))
print("example3:", r3.iterations, "iterations, x(1) =", r3.solution(1.0))
