"""Existence certificates and Picard solver for the fractional BVP

    ᶜD^q x(t) = f(t, x(t)),  t in [0, 1],  1 < q <= 2,
    x'(xi) = beta * ᶜD^nu x(eta),  x(1) = alpha * (I^p x)(eta).
"""

from .errors import (
    ConfigError,
    DegenerateProblemError,
    DomainError,
    FracBVPError,
    GridTooCoarseError,
    MissingLipschitzError,
    NotApplicableError,
    RHSEvaluationError,
)
from .fracops import (
    Grid,
    GridFunction,
    caputo_derivative,
    rl_integral,
    rl_integral_nodes,
    singular_weighted_integral,
)
from .problem import (
    Certificate,
    ProblemSpec,
    certify,
    compute_deltas,
    compute_omega,
    estimate_lipschitz,
)
from .solution_operator import (
    apply_S,
    compute_c0,
    compute_c1,
    evaluate_solution,
    integral_form,
    solve_linear,
)
from .solver import SolveReport, SolverConfig, solution_radius, solve
from .special import Order, beta, caputo_of_monomial, gamma, rl_integral_of_monomial
from .verify import ResidualReport, verify_solution

__version__ = "0.1.0"
