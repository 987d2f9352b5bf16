"""Finite-difference reference solver: L1 in time, centered differences in space.

Deliberately low order and independent of the eigenfunction machinery, so
agreement with :mod:`fracspec.solver` is a meaningful cross-check.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SingularSystem
from .quadrature import as_integrand


def l1_weights(n, alpha):
    """``w_j = (j+1)^(1-alpha) - j^(1-alpha)`` for ``j = 0..n-1``."""
    j = np.arange(n, dtype=float)
    return (j + 1.0) ** (1.0 - alpha) - j ** (1.0 - alpha)


def caputo_l1(samples, alpha, dt):
    """L1 approximation of the Caputo derivative on a uniform grid.

    ``D_n = dt^-alpha / Gamma(2-alpha) * sum_{j<n} w_j (f_{n-j} - f_{n-j-1})``
    for ``n >= 1``; ``D_0`` is set to 0.  Works along the first axis, so
    ``samples`` may carry trailing spatial dimensions.
    """
    f = np.asarray(samples, dtype=float)
    if f.shape[0] < 2:
        raise ValueError("need at least two samples")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    diffs = np.diff(f, axis=0)
    n = diffs.shape[0]
    w = l1_weights(n, alpha)
    out = np.zeros_like(f)
    for m in range(1, n + 1):
        # sum_{j=0}^{m-1} w_j * diffs[m-1-j]
        out[m] = np.tensordot(w[:m][::-1], diffs[:m], axes=(0, 0))
    return out * dt**-alpha / math.gamma(2.0 - alpha)


@dataclass
class GridSolution:
    nx: int
    nt: int
    dt: float
    dx: float
    values: np.ndarray  # (nt + 1, nx + 2), boundary columns included
    alpha: float
    boundary: object

    @property
    def xs(self):
        return np.linspace(0.0, 1.0, self.nx + 2)

    @property
    def ts(self):
        return np.arange(self.nt + 1) * self.dt

    def to_csv(self):
        """One row per time level: ``t`` followed by the values at every node."""
        lines = ["t," + ",".join("x=%.17g" % x for x in self.xs)]
        for t, row in zip(self.ts, self.values):
            lines.append(",".join("%.17g" % v for v in (t, *row)))
        return "\n".join(lines) + "\n"


def fd_solve(alpha, boundary, u0, nx, nt, T):
    """Implicit L1 / centered-difference solve on ``nx`` interior nodes and ``nt`` steps.

    Robin conditions use second-order ghost nodes
    ``u_{-1} = u_1 - 2 dx beta u_0`` (mirrored at ``x = 1``); Dirichlet
    boundary columns stay zero.
    """
    if nx < 3 or nt < 2:
        raise ValueError("need nx >= 3 and nt >= 2")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if not T > 0.0:
        raise ValueError("T must be positive")
    u0 = as_integrand(u0)
    dx = 1.0 / (nx + 1)
    dt = T / nt
    xs = np.linspace(0.0, 1.0, nx + 2)
    values = np.zeros((nt + 1, nx + 2))
    values[0] = u0(xs)

    if boundary.is_dirichlet:
        values[0, 0] = values[0, -1] = 0.0
        sl = slice(1, nx + 1)
    else:
        sl = slice(0, nx + 2)
    m = sl.stop - sl.start

    mu = dt**alpha * math.gamma(2.0 - alpha) / dx**2
    # (I - mu L) u^n = u^{n-1} - sum_{j>=1} w_j (u^{n-j} - u^{n-j-1}),  w_0 = 1
    ab = np.zeros((3, m))
    ab[0, 1:] = -mu
    ab[1, :] = 1.0 + 2.0 * mu
    ab[2, :-1] = -mu
    if not boundary.is_dirichlet:
        # ghost substitution doubles the inward coupling and adds the beta term
        ab[0, 1] = -2.0 * mu
        ab[2, -2] = -2.0 * mu
        ab[1, 0] += 2.0 * mu * dx * boundary.beta
        ab[1, -1] += 2.0 * mu * dx * boundary.beta

    w_rev = np.ascontiguousarray(l1_weights(nt, alpha)[::-1])
    diffs = np.zeros((nt, m))
    u_prev = values[0, sl].copy()
    for n in range(1, nt + 1):
        rhs = u_prev.copy()
        if n > 1:
            rhs -= w_rev[nt - n : nt - 1] @ diffs[: n - 1]
        try:
            u_new = scipy.linalg.solve_banded((1, 1), ab, rhs, check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(str(exc)) from exc
        if not np.all(np.isfinite(u_new)):
            raise SingularSystem(f"non-finite values at step {n}")
        diffs[n - 1] = u_new - u_prev
        values[n, sl] = u_new
        u_prev = u_new
    return GridSolution(nx, nt, dt, dx, values, alpha, boundary)
