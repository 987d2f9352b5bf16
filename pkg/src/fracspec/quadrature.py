"""Inner products and bilinear forms on ``[0, 1]``.

All integrals use composite 16-point Gauss-Legendre quadrature.  The panel
count starts at ``max(8, ceil(hint))`` where ``hint`` is roughly the
angular frequency of the most oscillatory factor, and doubles until two
successive values agree to ``1e-12 * (1 + |value|)``.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import QuadratureFailure

GL_ORDER = 16
REFINE_RTOL = 1e-12
MAX_PANELS = 1 << 16

_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_ORDER)


@dataclass(frozen=True)
class Integrand:
    """A vectorized function on ``[0, 1]`` plus a frequency hint for panel sizing."""

    func: Callable
    oscillation_hint: float = 0.0

    def __call__(self, x):
        # constant-valued callables (e.g. ``lambda x: 0.0``) broadcast to the node shape
        return np.broadcast_to(np.asarray(self.func(x), dtype=float), np.shape(x))


def as_integrand(f):
    if isinstance(f, Integrand):
        return f
    return Integrand(f, float(getattr(f, "oscillation_hint", 0.0)))


def gauss_legendre_nodes(panels):
    """Nodes and weights of the composite rule with ``panels`` equal panels on ``[0, 1]``."""
    h = 1.0 / panels
    left = np.arange(panels) * h
    x = (left[:, None] + 0.5 * h * (_GL_X + 1.0)).ravel()
    w = np.tile(0.5 * h * _GL_W, panels)
    return x, w


def integrate(fn, hint=0.0):
    """Integrate ``fn`` over ``[0, 1]``.

    ``fn`` maps an array of nodes to values whose last axis runs over the
    nodes; leading axes (e.g. a batch of integrands) are integrated
    independently and converge jointly.
    """
    panels = max(8, int(math.ceil(hint)))
    x, w = gauss_legendre_nodes(panels)
    prev = np.asarray(fn(x)) @ w
    while True:
        panels *= 2
        if panels > MAX_PANELS:
            raise QuadratureFailure(f"no convergence with {MAX_PANELS} panels")
        x, w = gauss_legendre_nodes(panels)
        cur = np.asarray(fn(x)) @ w
        if np.all(np.abs(cur - prev) <= REFINE_RTOL * (1.0 + np.abs(cur))):
            return cur if np.ndim(cur) else float(cur)
        prev = cur


def _hint(*fs):
    return max(float(getattr(f, "oscillation_hint", 0.0)) for f in fs)


def inner_product(f, g):
    """``(f, g) = int_0^1 f g dx``."""
    f, g = as_integrand(f), as_integrand(g)
    return integrate(lambda x: f(x) * g(x), _hint(f, g))


def l2_norm(f):
    return math.sqrt(max(inner_product(f, f), 0.0))


def bilinear_a(f, g):
    """``a(f, g) = int_0^1 f' g' dx``; arguments must expose ``derivative``."""
    return integrate(lambda x: f.derivative(x) * g.derivative(x), _hint(f, g))


def bilinear_a_beta(f, g, beta):
    """``a(f, g) + beta (f(0) g(0) + f(1) g(1))``: the boundary measure is counting measure on {0, 1}."""
    if not beta > 0.0:
        raise ValueError("beta must be positive")
    return bilinear_a(f, g) + beta * (f(0.0) * g(0.0) + f(1.0) * g(1.0))


def project(u0, basis):
    """Coefficients ``c_k = (u0, psi_k)`` for every pair in ``basis``, in index order."""
    if not basis:
        raise ValueError("basis must be nonempty")
    if len({p.boundary for p in basis}) != 1:
        raise ValueError("basis pairs must share one boundary specification")
    u0 = as_integrand(u0)
    hint = max(u0.oscillation_hint, max(p.oscillation_hint for p in basis))

    def batch(x):
        ux = u0(x)
        return np.stack([p(x) for p in basis]) * ux

    return [float(c) for c in np.atleast_1d(integrate(batch, hint))]


def gram_matrix(basis):
    """Matrix of pairwise ``L^2`` inner products."""
    hint = max(p.oscillation_hint for p in basis)

    def batch(x):
        vals = np.stack([p(x) for p in basis])
        return vals[:, None, :] * vals[None, :, :]

    return integrate(batch, hint)


def energy_matrix(basis, beta=None):
    """Matrix of ``a`` (``beta`` None) or ``a_beta`` values over ``basis``."""
    hint = max(p.oscillation_hint for p in basis)

    def batch(x):
        d = np.stack([p.derivative(x) for p in basis])
        return d[:, None, :] * d[None, :, :]

    out = integrate(batch, hint)
    if beta is not None:
        if not beta > 0.0:
            raise ValueError("beta must be positive")
        b0 = np.array([p(0.0) for p in basis])
        b1 = np.array([p(1.0) for p in basis])
        out = out + beta * (np.outer(b0, b0) + np.outer(b1, b1))
    return out
