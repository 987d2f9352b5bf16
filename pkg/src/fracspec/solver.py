"""Truncated eigenfunction-series solutions of the fractional diffusion problem.

For ``D_t^alpha u = u_xx`` on ``[0, 1]`` with Dirichlet or Robin data and
``u(x, 0) = u0(x)``, the solution is

    u(x, t) = sum_k c_k E_alpha(-lambda_k t^alpha) psi_k(x),   c_k = (u0, psi_k),

truncated here after ``N`` modes.
"""

import json
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .eigen import BoundarySpec, EigenPair, eigenpairs
from .mlf import ml
from .quadrature import as_integrand, l2_norm, project

DEFAULT_N = 64
BOUND_MARGIN = 1.05


@dataclass(frozen=True)
class SpectralSolution:
    alpha: float
    boundary: BoundarySpec
    horizon: float
    pairs: Tuple[EigenPair, ...]
    coeffs: Tuple[float, ...]
    u0_norm: float

    def __post_init__(self):
        if not self.pairs or len(self.pairs) != len(self.coeffs):
            raise ValueError("need N >= 1 pairs with one coefficient each")

    @property
    def N(self):
        return len(self.pairs)

    @property
    def lambdas(self):
        return np.array([p.lam for p in self.pairs])

    def time_factors(self, ts):
        """``F[k, j] = E_alpha(-lambda_k t_j^alpha)``; exactly 1 at ``t = 0``.

        Modes with a zero coefficient are skipped (their row is left at 0).
        """
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        out = np.zeros((self.N, ts.size))
        for k, (pair, c) in enumerate(zip(self.pairs, self.coeffs)):
            if c == 0.0:
                continue
            for j, t in enumerate(ts):
                out[k, j] = 1.0 if t == 0.0 else ml(self.alpha, pair.lam * t**self.alpha)
        return out

    def evaluate(self, x, t):
        return evaluate(self, x, t)

    def evaluate_grid(self, xs, ts):
        return evaluate_grid(self, xs, ts)

    def evaluate_dx(self, xs, t):
        """Term-by-term x-derivative of the series at time ``t``."""
        self._check_time(t)
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        f = self.time_factors([t])[:, 0] * np.asarray(self.coeffs)
        return np.stack([p.derivative(xs) for p in self.pairs]).T @ f

    def truncation_bound(self, t):
        return truncation_bound(self, t)

    def _check_time(self, t):
        if not 0.0 <= t <= self.horizon:
            raise ValueError(f"t={t!r} outside [0, {self.horizon!r}]")

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "boundary": self.boundary.to_dict(),
            "lambdas": [p.lam for p in self.pairs],
            "amplitudes": [p.amplitude for p in self.pairs],
            "coeffs": list(self.coeffs),
            "u0_norm": self.u0_norm,
            "N": self.N,
            "T": self.horizon,
        }

    @classmethod
    def from_dict(cls, d):
        bc = BoundarySpec.from_dict(d["boundary"])
        pairs = tuple(
            EigenPair(k, float(lam), float(amp), bc)
            for k, (lam, amp) in enumerate(zip(d["lambdas"], d["amplitudes"]), start=1)
        )
        if len(pairs) != d["N"]:
            raise ValueError("N does not match the number of eigenvalues")
        return cls(float(d["alpha"]), bc, float(d["T"]), pairs,
                   tuple(float(c) for c in d["coeffs"]), float(d["u0_norm"]))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def solve_spectral(alpha, boundary, u0, N=DEFAULT_N, T=1.0):
    """Eigenpairs and projection coefficients of ``u0``; no time stepping happens here."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    if N < 1:
        raise ValueError("N must be at least 1")
    if not T > 0.0:
        raise ValueError("T must be positive")
    u0 = as_integrand(u0)
    pairs = tuple(eigenpairs(boundary, N))
    coeffs = tuple(float(c) for c in project(u0, pairs))
    return SpectralSolution(float(alpha), boundary, float(T), pairs, coeffs, l2_norm(u0))


def evaluate(sol, x, t):
    """``u_N(x, t)``; at ``t = 0`` this is the N-term projection of ``u0``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x!r} outside [0, 1]")
    return float(evaluate_grid(sol, [x], [t])[0, 0])


def evaluate_grid(sol, xs, ts):
    """Matrix ``M[i, j] = u_N(xs[i], ts[j])`` with one Mittag-Leffler call per (mode, time)."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise ValueError("xs must lie in [0, 1]")
    for t in ts:
        sol._check_time(t)
    factors = sol.time_factors(ts) * np.asarray(sol.coeffs)[:, None]
    modes = np.stack([p(xs) for p in sol.pairs])  # (N, nx)
    return modes.T @ factors


def truncation_bound(sol, t):
    """``L^2`` bound on the discarded modes at time ``t > 0``.

    Bessel's inequality bounds the coefficient tail by
    ``||u0||^2 - sum c_k^2`` and every dropped mode decays at least as fast
    as mode ``N``.
    """
    if not t > 0.0:
        raise ValueError("t must be positive")
    defect = sol.u0_norm**2 - math.fsum(c * c for c in sol.coeffs)
    tail = math.sqrt(max(defect, 0.0))
    return tail * ml(sol.alpha, sol.pairs[-1].lam * t**sol.alpha) * BOUND_MARGIN
