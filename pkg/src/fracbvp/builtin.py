"""Built-in right-hand sides and the three reference problems.

`PUBLISHED` lists the constants printed for each reference problem together
with the absolute tolerance used when comparing against them (5e-3 for
Ω-scale quantities, 5e-4 for Δ-scale quantities and thresholds).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .problem import ProblemSpec

__all__ = [
    "rhs_example1",
    "rhs_example2",
    "rhs_example3",
    "rhs_zero",
    "rhs_linear",
    "example1",
    "example2",
    "example3",
    "EXAMPLES",
    "PUBLISHED",
    "PublishedValue",
]


def rhs_example1(t, x):
    return (
        np.exp(-np.cos(t) ** 2) / ((35.0 * np.exp(t) + 1.0) * np.sqrt(t + 16.0)) * np.sin(x)
        + math.sqrt(2.0) / 2.0 * t / (t + 1.0)
    )


def rhs_example2(t, x):
    return (
        np.exp(-2.0 * t) * (2.0 + np.sin(t**2 - t))
        / ((3.0 + np.abs(np.cos(x))) * (4.0 + t**3 * x**2) ** 2)
    )


def rhs_example3(t, x):
    return (
        np.exp(-t) * np.cos(t * math.sqrt(2.0))
        / ((1.0 + np.abs(x)) * (2.0 + np.exp(t)) ** 2 * np.sqrt(t + 25.0))
        + t / (t + 1.0)
    )


def rhs_zero(t, x):
    return np.zeros(np.broadcast(t, x).shape)


def rhs_linear(a: float, b: float):
    """Affine right-hand side ``f(t, x) = a + b*x``."""

    def rhs(t, x):
        return a + b * np.asarray(x, dtype=float) + 0.0 * np.asarray(t, dtype=float)

    rhs.__name__ = f"linear_{a}_{b}"
    return rhs


def example1(**overrides) -> ProblemSpec:
    """q=4/3, p=3/2, nu=1/2, alpha=3, beta=1, xi=1/3, eta=1/2, L=1/144."""
    kw = dict(q=4 / 3, nu=1 / 2, p=3 / 2, alpha=3.0, beta=1.0, xi=1 / 3, eta=1 / 2,
              rhs=rhs_example1, lipschitz=1 / 144, name="example1")
    kw.update(overrides)
    return ProblemSpec(**kw)


def example2(**overrides) -> ProblemSpec:
    """q=3/2, p=4/3, nu=2/3, alpha=1/2, beta=1/4, xi=1/5, eta=3/4, |f| <= 1/16."""
    kw = dict(q=3 / 2, nu=2 / 3, p=4 / 3, alpha=1 / 2, beta=1 / 4, xi=1 / 5, eta=3 / 4,
              rhs=rhs_example2, rhs_bound=1 / 16, name="example2")
    kw.update(overrides)
    return ProblemSpec(**kw)


def example3(**overrides) -> ProblemSpec:
    """q=5/4, p=5/3, nu=1/4, alpha=2, beta=3/2, xi=2/5, eta=5/7, L=1/45.

    The dominating function is ``e^{-t}/45 + t/(t+1)``, whose sup over
    [0, 1] is attained at t = 1.
    """
    kw = dict(q=5 / 4, nu=1 / 4, p=5 / 3, alpha=2.0, beta=3 / 2, xi=2 / 5, eta=5 / 7,
              rhs=rhs_example3, lipschitz=1 / 45,
              rhs_bound=math.exp(-1.0) / 45.0 + 0.5, name="example3")
    kw.update(overrides)
    return ProblemSpec(**kw)


EXAMPLES = {"example1": example1, "example2": example2, "example3": example3}


class PublishedValue(NamedTuple):
    example: str
    quantity: str
    value: float
    tol: float


_SQPI, _SQ2 = math.sqrt(math.pi), math.sqrt(2.0)
OMEGA_TOL = 5e-3
DELTA_TOL = 5e-4

PUBLISHED = (
    PublishedValue("example1", "Omega", 40.4684, OMEGA_TOL),
    PublishedValue("example1", "L*Omega", 0.2810, OMEGA_TOL),
    PublishedValue("example1", "Delta1", 1.5 * (_SQPI - _SQ2) / 2.0, DELTA_TOL),
    PublishedValue("example1", "|Delta2|", 3.0 / 8.0 * (5.0 * _SQPI - _SQ2), DELTA_TOL),
    PublishedValue("example1", "|Delta3|", (_SQPI - _SQ2) / 2.0, DELTA_TOL),
    PublishedValue("example1", "alpha_threshold", 3.0 * math.sqrt(math.pi / 2.0), DELTA_TOL),
    PublishedValue("example1", "beta_threshold", math.sqrt(math.pi / 2.0), DELTA_TOL),
    PublishedValue("example2", "alpha_threshold", 1.7473, DELTA_TOL),
    PublishedValue("example2", "beta_threshold", 0.9829, DELTA_TOL),
    PublishedValue("example3", "Delta1", 0.3631, DELTA_TOL),
    PublishedValue("example3", "|Delta2|", 3.1968, DELTA_TOL),
    PublishedValue("example3", "Delta3", 0.2464, DELTA_TOL),
    PublishedValue("example3", "alpha_threshold", 2.6361, DELTA_TOL),
    PublishedValue("example3", "beta_threshold", 1.1829, DELTA_TOL),
    PublishedValue("example3", "Omega-1/Gamma(q+1)", 35.5044, OMEGA_TOL),
    PublishedValue("example3", "L*(Omega-1/Gamma(q+1))", 0.7890, OMEGA_TOL),
)
