"""Picard iteration ``x_{k+1} = S x_k`` on a uniform grid."""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NotApplicableError, RHSEvaluationError
from .fracops import Grid, GridFunction
from .problem import ProblemSpec, certify, compute_omega, evaluate_rhs
from .solution_operator import apply_S

__all__ = ["SolverConfig", "SolveReport", "solve", "solution_radius"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverConfig:
    """Iteration settings.

    Parameters
    ----------
    grid_n : int
        Number of grid nodes (at least 3).
    tol : float
        Stop once the sup-norm of two successive iterates differs by at most
        this much.
    max_iter : int
        Maximum number of applications of the fixed-point map.
    initial_guess : GridFunction, optional
        Starting iterate; defaults to zero. Must live on a grid with
        `grid_n` nodes.
    """

    grid_n: int = 1025
    tol: float = 1e-10
    max_iter: int = 200
    initial_guess: Optional[GridFunction] = None

    def __post_init__(self):
        if int(self.grid_n) != self.grid_n or self.grid_n < 3:
            raise DomainError(f"grid_n must be an integer >= 3, got {self.grid_n!r}")
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise DomainError(f"max_iter must be a positive integer, got {self.max_iter!r}")
        if self.initial_guess is not None and self.initial_guess.grid.n != self.grid_n:
            raise DomainError("initial guess lives on a different grid")


@dataclass(frozen=True)
class SolveReport:
    """Outcome of :func:`solve`.

    `diffs` holds ``||x_k - x_{k-1}||`` for k = 1..iterations. `ratios` are
    the successive-difference ratios ``d_k / d_{k-1}`` from k = 2 on (pairs
    whose previous difference is already at rounding level are skipped);
    `observed_ratio` is their maximum. `diverged` is set when an iterate
    stopped being finite; the last difference is then recorded as inf.
    The bounds are only present when ``L*Ω < 1`` with a supplied Lipschitz
    constant: `apriori_bound` is
    ``(LΩ)^k/(1-LΩ) * d_1`` and `aposteriori_bound` is ``LΩ/(1-LΩ) * d_k``.
    """

    solution: GridFunction
    iterations: int
    final_diff: float
    observed_ratio: Optional[float]
    contraction: Optional[float]
    apriori_bound: Optional[float]
    aposteriori_bound: Optional[float]
    converged: bool
    diffs: tuple[float, ...]
    ratios: tuple[float, ...]
    diverged: bool = False


def solve(spec: ProblemSpec, config: SolverConfig = SolverConfig()) -> SolveReport:
    """Run Picard iteration from the initial guess until the update is below `tol`.

    The iteration runs whether or not the contraction certificate holds;
    without it no error bound is reported, a warning is issued, and
    divergence shows up as ``converged=False`` rather than an exception.
    """
    cert = certify(spec)
    if cert.banach_ok:
        contraction = cert.l_omega
    else:
        contraction = None
        warnings.warn(
            f"{spec.name or 'problem'}: contraction certificate not established; "
            "running Picard iteration without error bounds",
            RuntimeWarning,
            stacklevel=2,
        )

    grid = Grid(config.grid_n)
    x = config.initial_guess if config.initial_guess is not None else GridFunction.zeros(grid)
    diffs: list[float] = []
    ratios: list[float] = []
    converged = diverged = False
    for k in range(1, config.max_iter + 1):
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                x_new = apply_S(spec, x)
        except (DomainError, RHSEvaluationError):
            # a bad first step is the caller's f or guess; later ones are blow-up
            if k == 1:
                raise
            log.debug("iteration %d: iterate is no longer finite", k)
            diffs.append(math.inf)
            diverged = True
            break
        d = float(np.max(np.abs(x_new.values - x.values)))
        if diffs:
            floor = 1e3 * np.finfo(float).eps * max(1.0, x_new.sup_norm())
            if diffs[-1] > floor:
                ratios.append(d / diffs[-1])
        diffs.append(d)
        x = x_new
        log.debug("iteration %d: diff %.3e", k, d)
        if d <= config.tol:
            converged = True
            break
        if not math.isfinite(d):
            diverged = True
            break

    apriori = aposteriori = None
    if contraction is not None:
        k = len(diffs)
        apriori = contraction**k / (1.0 - contraction) * diffs[0]
        aposteriori = contraction / (1.0 - contraction) * diffs[-1]
    return SolveReport(
        solution=x,
        iterations=len(diffs),
        final_diff=diffs[-1],
        observed_ratio=max(ratios) if ratios else None,
        contraction=contraction,
        apriori_bound=apriori,
        aposteriori_bound=aposteriori,
        converged=converged,
        diffs=tuple(diffs),
        ratios=tuple(ratios),
        diverged=diverged,
    )


def solution_radius(spec: ProblemSpec, samples: int = 10001) -> float:
    """Radius ``Ω M / (1 - Ω L)`` of the invariant ball, ``M = sup |f(t, 0)|``.

    M is the maximum over `samples` equispaced points in [0, 1].
    """
    if spec.lipschitz is None:
        raise NotApplicableError("solution radius needs a supplied Lipschitz constant")
    omega = compute_omega(spec)
    lo = spec.lipschitz * omega
    if lo >= 1.0:
        raise NotApplicableError(f"L*Omega = {lo:.4g} >= 1, no contraction")
    t = np.linspace(0.0, 1.0, samples)
    M = float(np.max(np.abs(evaluate_rhs(spec, t, np.zeros_like(t)))))
    return omega * M / (1.0 - lo)
