"""Fractional integrals and Caputo derivatives of grid-sampled functions.

Every operator here is a product-integration rule: the smooth factor (the
sampled function, or a finite-difference surrogate of its derivative) is
replaced by its piecewise-linear interpolant on a uniform grid, and the
power kernel ``(t - s)**a`` is integrated against it in closed form. The
upper limit does not have to be a grid node; the trailing partial interval
is integrated exactly against the interpolant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, GridTooCoarseError
from .special import as_order, caputo_of_monomial, gamma

__all__ = [
    "Grid",
    "GridFunction",
    "rl_integral",
    "rl_integral_nodes",
    "singular_weighted_integral",
    "singular_weights",
    "caputo_derivative",
]

# Points closer than this (in units of h) to a node are snapped onto it.
_SNAP = 1e-12


@dataclass(frozen=True)
class Grid:
    """Uniform partition ``t_i = i/(n-1)`` of [0, 1]."""

    n: int
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"grid needs an integer node count >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        nodes = np.arange(self.n, dtype=float) / (self.n - 1)
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    @property
    def h(self) -> float:
        return 1.0 / (self.n - 1)

    def locate(self, t: float) -> tuple[int, float]:
        """Return ``(k, theta)`` with ``t = (k + theta) * h`` and ``0 <= theta < 1``.

        Points within rounding distance of a node are reported as that node
        (``theta == 0``); ``t = 1`` maps to ``(n - 1, 0)``.
        """
        x = t * (self.n - 1)
        k = round(x)
        if abs(x - k) <= _SNAP * max(1.0, x):
            return int(k), 0.0
        k = math.floor(x)
        return k, x - k


@dataclass(frozen=True)
class GridFunction:
    """Real values sampled on every node of a :class:`Grid`."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.n,):
            raise DomainError(
                f"expected {self.grid.n} values, got array of shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("grid function values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grid: Grid, fn: Callable) -> "GridFunction":
        """Sample a vectorised callable ``fn(t)`` on the grid nodes."""
        values = np.broadcast_to(np.asarray(fn(grid.nodes), dtype=float), grid.nodes.shape)
        return cls(grid, values)

    @classmethod
    def zeros(cls, grid: Grid) -> "GridFunction":
        return cls(grid, np.zeros(grid.n))

    def __call__(self, t):
        """Evaluate the piecewise-linear interpolant at `t` (scalar or array)."""
        return np.interp(t, self.grid.nodes, self.values)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))


def _check_t(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"evaluation point must lie in [0, 1], got {t}")
    return t


def _power_diff(A, B, c):
    """``A**c - B**c`` for ``A > B >= 0`` and ``c > 0`` without cancellation."""
    with np.errstate(divide="ignore"):
        ratio = np.log(B / A)
    return -(A**c) * np.expm1(c * ratio)


def _segment_weights(A, B, a):
    """Weights of the end values on ``r in [B, A]`` for ``∫ r**a * lin(r) dr``.

    Here ``r = upper - s`` so `A` belongs to the left end of the interval in
    ``s`` and `B` to the right end. Returns ``(w_left, w_right)``.
    """
    c = a + 1.0
    i0 = _power_diff(A, B, c) / c
    # ∫ r**a (A - r) dr
    i1 = A * i0 - _power_diff(A, B, c + 1.0) / (c + 1.0)
    L = A - B
    w_right = i1 / L
    return i0 - w_right, w_right


def singular_weights(grid: Grid, exponent: float, upper: float) -> np.ndarray:
    """Weight vector `w` with ``∫_0^upper (upper-s)**exponent f(s) ds ≈ w @ f``.

    `f` is the piecewise-linear interpolant of the nodal values. The weights
    are exact for piecewise-linear `f`, which makes the rule second order for
    smooth `f`.
    """
    exponent = float(exponent)
    if not exponent > -1.0:
        raise DomainError(f"kernel exponent must exceed -1, got {exponent}")
    upper = _check_t(upper)
    w = np.zeros(grid.n)
    if upper == 0.0:
        return w
    k, theta = grid.locate(upper)
    if k == 0 and theta == 0.0:
        # snapped onto t = 0
        return w
    h = grid.h
    # full intervals [s_j, s_{j+1}], j < k
    j = np.arange(k)
    A = upper - j * h
    B = upper - (j + 1) * h
    if theta == 0.0:
        B[-1] = 0.0
    wl, wr = _segment_weights(A, np.maximum(B, 0.0), exponent)
    w[:k] += wl
    w[1 : k + 1] += wr
    if theta > 0.0:
        # trailing partial interval [s_k, upper]; the right value is interpolated
        A = upper - k * h
        wl, wr = _segment_weights(np.array([A]), np.array([0.0]), exponent)
        w[k] += wl[0] + wr[0] * (1.0 - theta)
        w[k + 1] += wr[0] * theta
    return w


def singular_weighted_integral(f: GridFunction, exponent: float, upper: float) -> float:
    """``∫_0^upper (upper - s)**exponent f(s) ds`` by product integration.

    No Gamma prefactor is applied. ``upper = 0`` returns 0.
    """
    return float(singular_weights(f.grid, exponent, upper) @ f.values)


def rl_integral(f: GridFunction, p, t: float) -> float:
    """Riemann-Liouville integral of order `p` of `f` at `t` (fractional trapezoid)."""
    p = as_order(p)
    return singular_weighted_integral(f, p - 1.0, t) / gamma(p)


@lru_cache(maxsize=32)
def _node_kernels(n: int, a: float) -> tuple[np.ndarray, np.ndarray]:
    # For t_i = i*h the weights depend only on the offset k = i - j of the
    # interval [s_j, s_{j+1}]; index 0 is padding.
    k = np.arange(1, n, dtype=float)
    wl, wr = _segment_weights(k, k - 1.0, a)
    left = np.concatenate(([0.0], wl))
    right = np.concatenate(([0.0], wr))
    left.setflags(write=False)
    right.setflags(write=False)
    return left, right


def rl_integral_nodes(f: GridFunction, p) -> np.ndarray:
    """Riemann-Liouville integral of order `p` of `f` at every grid node.

    Equivalent to calling :func:`rl_integral` at each node, but done as two
    discrete convolutions.
    """
    p = as_order(p)
    n = f.grid.n
    left, right = _node_kernels(n, p - 1.0)
    v = f.values
    out = np.convolve(v, left)[:n]
    out[1:] += np.convolve(v[1:], right)[1:n]
    return out * f.grid.h**p / gamma(p)


def _first_differences(f: GridFunction) -> GridFunction:
    edge = 2 if f.grid.n >= 3 else 1
    return GridFunction(f.grid, np.gradient(f.values, f.grid.h, edge_order=edge))


def _second_differences(f: GridFunction) -> GridFunction:
    v = f.values
    n = f.grid.n
    d = np.empty(n)
    d[1:-1] = (v[:-2] - 2.0 * v[1:-1] + v[2:]) / f.grid.h**2
    if n >= 4:
        d[0] = 2.0 * d[1] - d[2]
        d[-1] = 2.0 * d[-2] - d[-3]
    else:
        d[0] = d[-1] = d[1]
    return GridFunction(f.grid, d)


def _split_start_singularity(f: GridFunction, sigma: float):
    """Fit ``a + b t + c2 t**2 + c t**sigma + d t**(sigma+1)`` through the first five nodes.

    Returns ``(remainder, (c, d))`` where the remainder is `f` minus the two
    non-polynomial terms. Keeping ``t**2`` in the basis stops the smooth
    curvature from leaking into `c` and `d`.
    """
    h = f.grid.h
    tau = np.arange(5.0)
    basis = np.column_stack([np.ones(5), tau, tau**2, tau**sigma, tau ** (sigma + 1.0)])
    c, d = np.linalg.solve(basis, f.values[:5])[3:]
    c, d = c / h**sigma, d / h ** (sigma + 1.0)
    t = f.grid.nodes
    rest = f.values - c * t**sigma - d * t ** (sigma + 1.0)
    return GridFunction(f.grid, rest), (c, d)


def _caputo_l12(f: GridFunction, alpha: float, t: float) -> float:
    # On [s_j, s_{j+1}], j >= 1, f' is taken from the quadratic through
    # s_{j-1}, s_j, s_{j+1}; it is linear in s, with end values `left` and
    # `right`. The first interval keeps the plain slope (robust when f
    # behaves like s**b, b < 1, near the origin).
    grid = f.grid
    v, h = f.values, grid.h
    k, theta = grid.locate(t)
    slope0 = (v[1] - v[0]) / h

    def quadratic_slopes(j, frac):
        centred = (v[j + 1] - v[j - 1]) / (2.0 * h)
        return centred, centred + frac * (v[j + 1] - 2.0 * v[j] + v[j - 1]) / h

    total = 0.0
    if k > 0:
        j = np.arange(k)
        A = t - j * h
        B = np.maximum(t - (j + 1) * h, 0.0)
        if theta == 0.0:
            B[-1] = 0.0
        wl, wr = _segment_weights(A, B, -alpha)
        left = np.full(k, slope0)
        right = np.full(k, slope0)
        if k > 1:
            left[1:], right[1:] = quadratic_slopes(j[1:], 1.0)
        total += wl @ left + wr @ right
    if theta > 0.0:
        wl, wr = _segment_weights(np.array([t - k * h]), np.array([0.0]), -alpha)
        left, right = (slope0, slope0) if k == 0 else quadratic_slopes(k, theta)
        total += wl[0] * left + wr[0] * right
    return float(total) / gamma(1.0 - alpha)


def caputo_derivative(f: GridFunction, alpha, t: float, *,
                      start_exponent: float | None = None) -> float:
    """Caputo derivative of order ``0 < alpha <= 2`` of grid data at `t`.

    * ``0 < alpha < 1``: L1-2 scheme. The derivative is the plain slope
      on the first interval and the derivative of the local quadratic
      interpolant on the others, integrated exactly against
      ``(t - s)**(-alpha)``. Order ``3 - alpha`` for smooth `f`, against
      ``2 - alpha`` for the classical L1 scheme.
    * ``1 < alpha < 2``: second differences (linearly extrapolated to the
      end nodes) are interpolated piecewise-linearly and integrated exactly
      against ``(t - s)**(1 - alpha)``.
    * ``alpha`` equal to 1 or 2 returns the corresponding ordinary
      derivative from second-order finite differences.

    Data of the form ``smooth + c t**sigma`` with non-integer ``sigma > 1``
    (typical for solutions of order-sigma equations) make the second
    derivative blow up at 0 and cap the accuracy at ``O(h**(sigma-1))``.
    Passing ``start_exponent=sigma`` fits and removes the terms
    ``c t**sigma + d t**(sigma+1)`` on the first five nodes, differentiates
    them exactly and applies the scheme to the remainder only.
    """
    alpha = as_order(alpha)
    if alpha > 2.0:
        raise DomainError(f"Caputo order must lie in (0, 2], got {alpha}")
    t = _check_t(t)
    grid = f.grid
    order = math.floor(alpha) + 1 if alpha != int(alpha) else int(alpha)
    if grid.n < order + 1:
        raise GridTooCoarseError(
            f"order-{order} differences need at least {order + 1} nodes, grid has {grid.n}"
        )
    if t == 0.0 and alpha != int(alpha):
        raise DomainError("Caputo derivative at t = 0 is not computed for fractional orders")

    if start_exponent is not None and start_exponent != int(start_exponent):
        if not start_exponent > 1.0:
            raise DomainError(f"start_exponent must exceed 1, got {start_exponent}")
        if grid.n < 5:
            raise GridTooCoarseError("singularity fit needs at least 5 nodes")
        rest, (c, d) = _split_start_singularity(f, start_exponent)
        exact = (c * caputo_of_monomial(start_exponent + 1.0, alpha, t)
                 + d * caputo_of_monomial(start_exponent + 2.0, alpha, t))
        return caputo_derivative(rest, alpha, t) + exact

    if alpha == 1.0:
        return float(_first_differences(f)(t))
    if alpha == 2.0:
        return float(_second_differences(f)(t))

    if alpha < 1.0:
        return _caputo_l12(f, alpha, t)

    return singular_weighted_integral(_second_differences(f), 1.0 - alpha, t) / gamma(2.0 - alpha)
