"""A-posteriori residuals of a grid solution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridTooCoarseError
from .fracops import GridFunction, caputo_derivative, rl_integral
from .problem import ProblemSpec, evaluate_rhs
from .solution_operator import compute_c1, rhs_on_grid, solve_linear

__all__ = ["ResidualReport", "verify_solution", "ODE_SAMPLE_POINTS"]

# The solution behaves like t**q near the origin, where discrete Caputo
# derivatives lose accuracy; the equation residual is sampled away from it.
ODE_SAMPLE_POINTS = np.linspace(0.1, 1.0, 32)


@dataclass(frozen=True)
class ResidualReport:
    fixed_point_residual: float
    bc1_residual: float
    bc2_residual: float
    ode_residual: float

    def as_dict(self) -> dict[str, float]:
        return {
            "fixed_point_residual": self.fixed_point_residual,
            "bc1_residual": self.bc1_residual,
            "bc2_residual": self.bc2_residual,
            "ode_residual": self.ode_residual,
        }


def verify_solution(spec: ProblemSpec, x: GridFunction) -> ResidualReport:
    """Residuals of the fixed-point equation, both boundary conditions and the ODE.

    ``x'(xi)`` is taken from ``I^(q-1) h(xi) - c1`` with ``h = f(t, x)``,
    the derivative of the integral representation, instead of differencing
    the grid data. The remaining operators act on `x` directly; both
    Caputo derivatives treat the leading ``t**q`` behaviour of the solution
    exactly (see ``start_exponent`` in :func:`fracbvp.caputo_derivative`).
    """
    if x.grid.n < 5:
        raise GridTooCoarseError(f"verification needs at least 5 nodes, grid has {x.grid.n}")
    h = rhs_on_grid(spec, x)
    fixed_point = float(np.max(np.abs(solve_linear(spec, h).values - x.values)))

    if spec.xi == 0.0:
        dx_xi = -compute_c1(spec, h)
    else:
        dx_xi = rl_integral(h, spec.q - 1.0, spec.xi) - compute_c1(spec, h)
    # x = I^q h - c0 - c1 t starts like t**q, t**(q+1); split those off
    bc1 = abs(dx_xi - spec.beta * caputo_derivative(x, spec.nu, spec.eta, start_exponent=spec.q))
    bc2 = abs(x.values[-1] - spec.alpha * rl_integral(x, spec.p, spec.eta))

    t = ODE_SAMPLE_POINTS
    lhs = np.array([caputo_derivative(x, spec.q, ti, start_exponent=spec.q) for ti in t])
    ode = float(np.max(np.abs(lhs - evaluate_rhs(spec, t, x(t)))))
    return ResidualReport(fixed_point, float(bc1), float(bc2), ode)
