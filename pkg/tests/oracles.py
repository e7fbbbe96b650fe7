"""Independent reference computations used only by the tests.

Nothing here shares code with the product-integration rules under test:
singular integrals go through QUADPACK's algebraic-weight routine, the
iterated integral through a plain tensor Gauss-Legendre rule.
"""

import warnings

import numpy as np
from scipy import integrate
from scipy.special import gamma as sgamma


def weighted_quad(fn, exponent, upper):
    """``∫_0^upper (upper - s)**exponent fn(s) ds`` with QUADPACK (weight='alg')."""
    if upper == 0.0:
        return 0.0
    with warnings.catch_warnings():
        # QUADPACK flags roundoff when it hits the requested 1e-13; harmless here
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(fn, 0.0, upper, weight="alg", wvar=(0.0, exponent),
                                epsabs=1e-14, epsrel=1e-13, limit=200)
    return val


def rl_quad(fn, p, t):
    return weighted_quad(fn, p - 1.0, t) / sgamma(p)


def caputo_quad(dn_fn, alpha, t):
    """Caputo derivative from the n-th derivative `dn_fn`, n = floor(alpha) + 1."""
    n = int(np.floor(alpha)) + 1
    return weighted_quad(dn_fn, n - alpha - 1.0, t) / sgamma(n - alpha)


def double_integral_2d(h, eta, p, q, panels=2000, points=3, chunk=200):
    """``∫_0^η ∫_0^s (η-s)^(p-1) (s-τ)^(q-1) h(τ) dτ ds`` on a panels x panels tensor rule.

    The triangle is mapped to a square by ``τ = s*u``:
    ``∫_0^η (η-s)^(p-1) s^q ∫_0^1 (1-u)^(q-1) h(s u) du ds``.
    Each direction uses `panels` equal panels with `points`-point
    Gauss-Legendre nodes.
    """
    x, w = np.polynomial.legendre.leggauss(points)

    def composite(a, b):
        edges = np.linspace(a, b, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * w[None, :]).ravel()
        return nodes, weights

    s, ws = composite(0.0, eta)
    u, wu = composite(0.0, 1.0)
    outer = ws * (eta - s) ** (p - 1.0) * s**q
    inner_w = wu * (1.0 - u) ** (q - 1.0)
    total = 0.0
    for i in range(0, s.size, chunk):
        sb = s[i:i + chunk, None]
        total += float(outer[i:i + chunk] @ (h(sb * u[None, :]) @ inner_w))
    return total
