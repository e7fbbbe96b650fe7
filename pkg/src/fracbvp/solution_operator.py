"""Closed-form solution of the linear problem and the nonlinear fixed-point map.

For a continuous source ``h`` the linear problem ``ᶜD^q x = h`` with the
nonlocal boundary conditions has the unique solution

    x(t) = I^q h(t) - c0 - c1 * t,

where ``c0`` and ``c1`` are linear functionals of ``h``. The iterated
integral that appears in ``c0`` is collapsed with the Beta integral

    ∫_τ^η (η-s)^(p-1) (s-τ)^(q-1) ds = B(p, q) (η-τ)^(p+q-1),

leaving one weakly singular integral with kernel exponent ``p+q-1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateProblemError, RHSEvaluationError
from .fracops import GridFunction, rl_integral, rl_integral_nodes, singular_weighted_integral
from .problem import DELTA_ATOL, ProblemSpec, compute_deltas, evaluate_rhs
from .special import beta as beta_fn
from .special import gamma

__all__ = [
    "OperatorConstants",
    "compute_c0",
    "compute_c1",
    "compute_constants",
    "double_integral",
    "evaluate_solution",
    "integral_form",
    "solve_linear",
    "rhs_on_grid",
    "apply_S",
]


@dataclass(frozen=True)
class OperatorConstants:
    c0: float
    c1: float


def _deltas(spec: ProblemSpec):
    d1, d2, d3 = compute_deltas(spec)
    if abs(d1) < DELTA_ATOL or abs(d3) < DELTA_ATOL:
        raise DegenerateProblemError(
            f"degenerate boundary conditions (Δ1={d1:.3e}, Δ3={d3:.3e})"
        )
    return d1, d2, d3


def _eta_term(spec, h):
    # ∫_0^η (η-s)^(q-ν-1)/Γ(q-ν) h(s) ds
    return singular_weighted_integral(h, spec.q - spec.nu - 1.0, spec.eta) / gamma(spec.q - spec.nu)


def _xi_term(spec, h):
    # ∫_0^ξ (ξ-s)^(q-2)/Γ(q-1) h(s) ds
    if spec.xi == 0.0:
        return 0.0
    return singular_weighted_integral(h, spec.q - 2.0, spec.xi) / gamma(spec.q - 1.0)


def double_integral(spec: ProblemSpec, h: GridFunction) -> float:
    """``∫_0^η ∫_0^s (η-s)^(p-1) (s-τ)^(q-1) h(τ) dτ ds`` via the Beta reduction."""
    p, q = spec.p, spec.q
    return beta_fn(p, q) * singular_weighted_integral(h, p + q - 1.0, spec.eta)


def compute_c1(spec: ProblemSpec, h: GridFunction) -> float:
    _, _, d3 = _deltas(spec)
    return gamma(2.0 - spec.nu) / d3 * (spec.beta * _eta_term(spec, h) - _xi_term(spec, h))


def compute_c0(spec: ProblemSpec, h: GridFunction) -> float:
    p, q = spec.p, spec.q
    d1, d2, d3 = _deltas(spec)
    endpoint = singular_weighted_integral(h, q - 1.0, 1.0)
    integral_part = (
        gamma(p + 1.0) * endpoint - spec.alpha * p * double_integral(spec, h)
    ) / (gamma(q) * d1)
    derivative_part = (
        gamma(2.0 - spec.nu) * d2 / ((p + 1.0) * d1 * d3)
        * (spec.beta * _eta_term(spec, h) - _xi_term(spec, h))
    )
    return integral_part + derivative_part


def compute_constants(spec: ProblemSpec, h: GridFunction) -> OperatorConstants:
    return OperatorConstants(compute_c0(spec, h), compute_c1(spec, h))


def evaluate_solution(spec: ProblemSpec, h: GridFunction, t: float) -> float:
    """Solution of the linear problem at `t`, assembled term by term.

    This is the expanded five-term representation; :func:`integral_form`
    evaluates the same quantity as ``I^q h(t) - c0 - c1 t``.
    """
    p, q, nu = spec.p, spec.q, spec.nu
    d1, d2, d3 = _deltas(spec)
    t = float(t)
    affine = gamma(2.0 - nu) * ((p + 1.0) * d1 * t + d2) / ((p + 1.0) * d1 * d3)
    return (
        rl_integral(h, q, t)
        - gamma(p + 1.0) / d1 * singular_weighted_integral(h, q - 1.0, 1.0) / gamma(q)
        + affine * _xi_term(spec, h)
        - spec.beta * affine * _eta_term(spec, h)
        + spec.alpha * p / d1 * double_integral(spec, h) / gamma(q)
    )


def integral_form(spec: ProblemSpec, h: GridFunction, t: float,
                  constants: OperatorConstants | None = None) -> float:
    """``I^q h(t) - c0 - c1 t``."""
    if constants is None:
        constants = compute_constants(spec, h)
    return rl_integral(h, spec.q, t) - constants.c0 - constants.c1 * float(t)


def solve_linear(spec: ProblemSpec, h: GridFunction) -> GridFunction:
    """Nodal values of the solution of the linear problem with source `h`."""
    c = compute_constants(spec, h)
    values = rl_integral_nodes(h, spec.q) - c.c0 - c.c1 * h.grid.nodes
    return GridFunction(h.grid, values)


def rhs_on_grid(spec: ProblemSpec, x: GridFunction) -> GridFunction:
    """``h_i = f(t_i, x_i)``; raises :class:`RHSEvaluationError` on non-finite values."""
    t = x.grid.nodes
    values = evaluate_rhs(spec, t, x.values)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        i = int(bad[0])
        raise RHSEvaluationError(
            f"f(t, x) is not finite at node {i} (t={t[i]:.6g}, x={x.values[i]:.6g})"
        )
    return GridFunction(x.grid, values)


def apply_S(spec: ProblemSpec, x: GridFunction) -> GridFunction:
    """The fixed-point map: solve the linear problem with source ``f(t, x(t))``."""
    return solve_linear(spec, rhs_on_grid(spec, x))
