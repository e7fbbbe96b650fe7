"""Gamma/Beta functions and closed-form fractional operators on monomials.

The monomial rules are exact and serve as oracles for the quadrature-based
operators in :mod:`fracbvp.fracops`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "Order",
    "as_order",
    "gamma",
    "beta",
    "caputo_of_monomial",
    "rl_integral_of_monomial",
]


@dataclass(frozen=True)
class Order:
    """A positive, finite fractional order."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if not math.isfinite(v) or v <= 0.0:
            raise DomainError(f"fractional order must be positive and finite, got {self.value!r}")
        object.__setattr__(self, "value", v)

    def __float__(self):
        return self.value


def as_order(value: float | Order) -> float:
    """Validate `value` as an order and return it as a float."""
    if isinstance(value, Order):
        return value.value
    return Order(value).value


def _check_positive(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {x!r}")
    return x


def gamma(x: float) -> float:
    """Gamma function for positive real arguments.

    Backed by :func:`math.gamma` (a Lanczos approximation accurate to a few
    ulps on the positive axis).
    """
    x = _check_positive("x", x)
    if x > 171.6:
        raise DomainError(f"gamma({x}) overflows double precision")
    return math.gamma(x)


def beta(a: float, b: float) -> float:
    """Beta function ``B(a, b) = Γ(a)Γ(b)/Γ(a+b)`` via log-gamma differences."""
    a = _check_positive("a", a)
    b = _check_positive("b", b)
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def caputo_of_monomial(lam: float, alpha: float | Order, t: float) -> float:
    """Caputo derivative of order `alpha` of ``s**(lam - 1)`` evaluated at `t`.

    Returns ``Γ(lam)/Γ(lam - alpha) * t**(lam - alpha - 1)``, or 0 when
    ``lam - 1`` is a nonnegative integer below ``ceil(alpha)`` (polynomials of
    degree < ceil(alpha) are annihilated).
    """
    alpha = as_order(alpha)
    lam = float(lam)
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    n = math.ceil(alpha)
    k = lam - 1.0
    if k >= 0 and k == int(k) and k < n:
        return 0.0
    if lam <= n:
        raise DomainError(
            f"exponent {k} is too rough for a Caputo derivative of order {alpha}"
        )
    shift = lam - alpha
    if shift <= 0 and shift == int(shift):
        raise DomainError(f"Γ(lam - alpha) has a pole at {shift}")
    power = lam - alpha - 1.0
    if t == 0.0:
        if power < 0:
            raise DomainError("derivative is unbounded at t = 0")
        if power > 0:
            return 0.0
    return gamma(lam) / gamma(shift) * t**power


def rl_integral_of_monomial(mu: float, p: float | Order, t: float) -> float:
    """Riemann-Liouville integral of order `p` of ``s**mu`` evaluated at `t`."""
    p = as_order(p)
    mu = float(mu)
    t = float(t)
    if mu < 0:
        raise DomainError(f"monomial exponent must be nonnegative, got {mu}")
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    return gamma(mu + 1.0) / gamma(mu + p + 1.0) * t ** (mu + p)
