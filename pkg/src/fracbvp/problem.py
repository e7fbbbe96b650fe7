"""Problem data, well-posedness constants and existence certificates.

The boundary value problem is

    ᶜD^q x(t) = f(t, x(t)),   t in [0, 1],   1 < q <= 2,
    x'(xi) = beta * ᶜD^nu x(eta),   x(1) = alpha * (I^p x)(eta),

with ``0 < nu <= 1``, ``p > 0`` and ``0 <= xi < eta < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.stats import qmc

from .errors import DegenerateProblemError, DomainError, MissingLipschitzError
from .special import gamma

__all__ = [
    "ProblemSpec",
    "Certificate",
    "compute_deltas",
    "compute_omega",
    "nondegeneracy_thresholds",
    "is_nondegenerate",
    "certify",
    "estimate_lipschitz",
    "evaluate_rhs",
]

RHS = Callable[[np.ndarray, np.ndarray], np.ndarray]

NONDEGENERACY_RTOL = 1e-10
DELTA_ATOL = 1e-13


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ProblemSpec:
    """Orders, coefficients, nodes and right-hand side of the problem.

    `rhs` is called as ``rhs(t, x)`` with equally shaped float arrays and
    must return an array of the same shape (scalar-only callables are
    accepted too, at the cost of a Python loop). `lipschitz` is the constant
    of ``|f(t,x) - f(t,y)| <= L|x - y|``; `rhs_bound` is a bound on
    ``sup |f|`` (or on the dominating function of f).
    """

    q: float
    nu: float
    p: float
    alpha: float
    beta: float
    xi: float
    eta: float
    rhs: RHS
    lipschitz: Optional[float] = None
    rhs_bound: Optional[float] = None
    name: str = ""

    def __post_init__(self):
        for key in ("q", "nu", "p", "alpha", "beta", "xi", "eta"):
            object.__setattr__(self, key, _finite(key, getattr(self, key)))
        if not 1.0 < self.q <= 2.0:
            raise DomainError(f"q must satisfy 1 < q <= 2, got {self.q}")
        if not 0.0 < self.nu <= 1.0:
            raise DomainError(f"nu must satisfy 0 < nu <= 1, got {self.nu}")
        if not self.p > 0.0:
            raise DomainError(f"p must be positive, got {self.p}")
        if not 0.0 <= self.xi < self.eta < 1.0:
            raise DomainError(
                f"nodes must satisfy 0 <= xi < eta < 1, got xi={self.xi}, eta={self.eta}"
            )
        for key in ("lipschitz", "rhs_bound"):
            value = getattr(self, key)
            if value is not None:
                value = _finite(key, value)
                if value < 0:
                    raise DomainError(f"{key} must be nonnegative, got {value}")
                object.__setattr__(self, key, value)
        if not callable(self.rhs):
            raise DomainError("rhs must be callable")


def evaluate_rhs(spec: ProblemSpec, t, x) -> np.ndarray:
    """Evaluate ``f(t, x)`` elementwise on arrays, falling back to a loop."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    try:
        out = np.asarray(spec.rhs(t, x), dtype=float)
        if out.shape != t.shape:
            out = np.broadcast_to(out, t.shape).astype(float)
    except (TypeError, ValueError):
        out = np.array([float(spec.rhs(float(a), float(b))) for a, b in zip(t.ravel(), x.ravel())])
        out = out.reshape(t.shape)
    return out


def compute_deltas(spec: ProblemSpec) -> tuple[float, float, float]:
    """Return the coupling constants ``(Δ1, Δ2, Δ3)``."""
    p, nu, a, b, eta = spec.p, spec.nu, spec.alpha, spec.beta, spec.eta
    d1 = gamma(p + 1.0) - a * eta**p
    d2 = a * eta ** (p + 1.0) - gamma(p + 2.0)
    d3 = b * eta ** (1.0 - nu) - gamma(2.0 - nu)
    return d1, d2, d3


def nondegeneracy_thresholds(spec: ProblemSpec) -> tuple[float, float]:
    """Values that `alpha` and `beta` must avoid: ``Γ(p+1)/η^p`` and ``Γ(2-ν)/η^(1-ν)``."""
    return (
        gamma(spec.p + 1.0) / spec.eta**spec.p,
        gamma(2.0 - spec.nu) / spec.eta ** (1.0 - spec.nu),
    )


def is_nondegenerate(spec: ProblemSpec, rtol: float = NONDEGENERACY_RTOL) -> bool:
    alpha_bad, beta_bad = nondegeneracy_thresholds(spec)
    return (
        abs(spec.alpha - alpha_bad) > rtol * alpha_bad
        and abs(spec.beta - beta_bad) > rtol * beta_bad
    )


def _require_nondegenerate(d1, d3):
    if abs(d1) < DELTA_ATOL or abs(d3) < DELTA_ATOL:
        raise DegenerateProblemError(
            f"degenerate boundary conditions (Δ1={d1:.3e}, Δ3={d3:.3e})"
        )


def compute_omega(spec: ProblemSpec) -> float:
    """Operator-norm bound Ω of the solution operator.

    Absolute values of `alpha` and `beta` are used, so Ω stays an upper
    bound when a coefficient is negative.
    """
    q, nu, p, xi, eta = spec.q, spec.nu, spec.p, spec.xi, spec.eta
    a, b = abs(spec.alpha), abs(spec.beta)
    d1, d2, d3 = compute_deltas(spec)
    _require_nondegenerate(d1, d3)
    coupling = gamma(2.0 - nu) * ((p + 1.0) * abs(d1) + abs(d2)) / ((p + 1.0) * abs(d1 * d3))
    derivative_terms = b * eta ** (q - nu) / gamma(q - nu + 1.0) + xi ** (q - 1.0) / gamma(q)
    integral_terms = 1.0 / gamma(q + 1.0) + a * eta ** (p + q) / gamma(p + q + 1.0)
    return (
        1.0 / gamma(q + 1.0)
        + coupling * derivative_terms
        + gamma(p + 1.0) / abs(d1) * integral_terms
    )


@dataclass(frozen=True)
class Certificate:
    """Constants and verdicts of the three existence results.

    ``banach_ok`` is the unique-solution condition ``L*Ω < 1``;
    ``krasnoselskii_ok`` is ``L*(Ω - 1/Γ(q+1)) < 1`` (with a dominating
    bound on f); ``schaefer_ok`` records that a uniform bound on f was
    supplied. A verdict of ``None`` means "not checked" (no Lipschitz
    constant available). For degenerate problems Ω is infinite and every
    verdict is False.
    """

    delta1: float
    delta2: float
    delta3: float
    omega: float
    omega_minus: float
    lipschitz_used: Optional[float]
    lipschitz_source: str
    banach_ok: Optional[bool]
    krasnoselskii_ok: Optional[bool]
    schaefer_ok: bool
    nondegenerate: bool
    abs_substituted: bool

    @property
    def l_omega(self) -> Optional[float]:
        if self.lipschitz_used is None:
            return None
        return self.lipschitz_used * self.omega

    @property
    def l_omega_minus(self) -> Optional[float]:
        if self.lipschitz_used is None:
            return None
        return self.lipschitz_used * self.omega_minus

    @property
    def any_ok(self) -> bool:
        return bool(self.banach_ok or self.krasnoselskii_ok or self.schaefer_ok)


def certify(
    spec: ProblemSpec,
    *,
    estimate: bool = False,
    trust_estimate: bool = False,
    require_lipschitz: bool = False,
) -> Certificate:
    """Evaluate Δ1..Δ3, Ω and the hypotheses of the existence results.

    A user-supplied ``spec.lipschitz`` always takes precedence. Without one,
    ``estimate=True`` computes a sampled estimate (a lower bound on the true
    constant); it only drives the verdicts when ``trust_estimate=True``,
    otherwise they stay ``None``. ``require_lipschitz=True`` raises
    :class:`MissingLipschitzError` when no constant is supplied and
    estimation is disabled.
    """
    d1, d2, d3 = compute_deltas(spec)
    nondegenerate = is_nondegenerate(spec)
    abs_substituted = spec.alpha < 0 or spec.beta < 0

    if spec.lipschitz is not None:
        L, source, usable = spec.lipschitz, "supplied", True
    elif estimate:
        L, source, usable = estimate_lipschitz(spec), "estimate", trust_estimate
    elif require_lipschitz:
        raise MissingLipschitzError("no Lipschitz constant supplied and estimation disabled")
    else:
        L, source, usable = None, "none", False

    if not nondegenerate:
        return Certificate(
            d1, d2, d3, math.inf, math.inf, L, source,
            banach_ok=False, krasnoselskii_ok=False, schaefer_ok=False,
            nondegenerate=False, abs_substituted=abs_substituted,
        )

    omega = compute_omega(spec)
    omega_minus = omega - 1.0 / gamma(spec.q + 1.0)
    if usable:
        banach_ok = L * omega < 1.0
        kras_ok = L * omega_minus < 1.0
    else:
        banach_ok = kras_ok = None
    schaefer_ok = spec.rhs_bound is not None and math.isfinite(spec.rhs_bound)
    return Certificate(
        d1, d2, d3, omega, omega_minus, L, source,
        banach_ok=banach_ok, krasnoselskii_ok=kras_ok, schaefer_ok=schaefer_ok,
        nondegenerate=True, abs_substituted=abs_substituted,
    )


def estimate_lipschitz(
    spec: ProblemSpec,
    samples: int = 4096,
    x_range: tuple[float, float] = (-10.0, 10.0),
) -> float:
    """Largest sampled difference quotient ``|f(t,x) - f(t,y)| / |x - y|``.

    Sample points ``(t, x, y)`` come from an unscrambled Halton sequence, so
    the result is deterministic. This is a lower bound on the true constant
    and is advisory only.
    """
    if samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples}")
    lo, hi = map(float, x_range)
    pts = qmc.Halton(d=3, scramble=False).random(int(samples) + 1)[1:]
    t = pts[:, 0]
    x = lo + (hi - lo) * pts[:, 1]
    y = lo + (hi - lo) * pts[:, 2]
    dx = np.abs(x - y)
    keep = dx > 1e-12 * max(1.0, hi - lo)
    t, x, y, dx = t[keep], x[keep], y[keep], dx[keep]
    if t.size == 0:
        return 0.0
    df = np.abs(evaluate_rhs(spec, t, x) - evaluate_rhs(spec, t, y))
    return float(np.max(df / dx))
