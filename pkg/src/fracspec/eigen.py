"""Eigensystems of ``-d^2/dx^2`` on ``[0, 1]`` with Dirichlet or Robin conditions.

Dirichlet: ``lambda_k = (k pi)^2``, ``phi_k(x) = sqrt(2) sin(k pi x)``.

Robin (``-u'(0) + beta u(0) = 0``, ``u'(1) + beta u(1) = 0``): the
eigenvalues are the positive roots of

    h_beta(lambda) = 2 sqrt(lambda) cos(sqrt(lambda))
                     + (beta - lambda / beta) sin(sqrt(lambda)),

one in each interval ``((k-1)^2 pi^2, k^2 pi^2)``, and

    psi_k(x) = A_k (sin(s x) + (s / beta) cos(s x)),   s = sqrt(lambda_k),
    A_k = sqrt(2) beta / sqrt(beta^2 + 2 beta + lambda_k).

The constant follows from ``int_0^1 (sin(s x) + (s/beta) cos(s x))^2 dx
= (beta^2 + 2 beta + lambda) / (2 beta^2)``, which uses ``h_beta = 0``.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BracketFailure, ToleranceNotReached

SQRT2 = math.sqrt(2.0)
DEFAULT_ROOT_TOL = 1e-15


class BoundaryKind(enum.Enum):
    DIRICHLET = "dirichlet"
    ROBIN = "robin"


@dataclass(frozen=True)
class BoundarySpec:
    """Boundary condition selector; ``beta`` is set iff the kind is Robin."""

    kind: BoundaryKind
    beta: Optional[float] = None

    def __post_init__(self):
        if self.kind is BoundaryKind.ROBIN:
            if self.beta is None or not self.beta > 0.0 or math.isinf(self.beta):
                raise ValueError(f"Robin boundary needs a finite beta > 0, got {self.beta!r}")
        elif self.beta is not None:
            raise ValueError("Dirichlet boundary takes no beta")

    @classmethod
    def dirichlet(cls):
        return cls(BoundaryKind.DIRICHLET)

    @classmethod
    def robin(cls, beta):
        return cls(BoundaryKind.ROBIN, float(beta))

    @property
    def is_dirichlet(self):
        return self.kind is BoundaryKind.DIRICHLET

    def to_dict(self):
        return {"kind": self.kind.value, "beta": self.beta}

    @classmethod
    def from_dict(cls, d):
        return cls(BoundaryKind(d["kind"]), d.get("beta"))

    def __str__(self):
        return "dirichlet" if self.is_dirichlet else f"robin(beta={self.beta!r})"


@dataclass(frozen=True)
class EigenPair:
    """One eigenvalue with what is needed to evaluate its normalized eigenfunction.

    Instances are callable: ``pair(x)`` evaluates the eigenfunction and
    ``pair.derivative(x)`` its exact x-derivative, both vectorized over ``x``.
    """

    index: int
    lam: float
    amplitude: float
    boundary: BoundarySpec

    @property
    def sqrt_lam(self):
        return math.sqrt(self.lam)

    @property
    def oscillation_hint(self):
        return self.sqrt_lam

    def __call__(self, x):
        return eigenfunction_eval(self, x)

    def derivative(self, x):
        return eigenfunction_deriv(self, x)

    def second_derivative(self, x):
        return -self.lam * eigenfunction_eval(self, x)


def dirichlet_eigs(n):
    """First ``n`` Dirichlet eigenpairs, ``lambda_k = k^2 pi^2``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    bc = BoundarySpec.dirichlet()
    return [EigenPair(k, (k * math.pi) ** 2, SQRT2, bc) for k in range(1, n + 1)]


def _h_of_s(beta, s):
    return 2.0 * s * math.cos(s) + (beta - s * s / beta) * math.sin(s)


def robin_char(beta, lam):
    """Characteristic function ``h_beta(lambda)`` in its sin/cos combination form."""
    if not beta > 0.0:
        raise ValueError("beta must be positive")
    if lam < 0.0:
        raise ValueError("lambda must be non-negative")
    return _h_of_s(beta, math.sqrt(lam))


def robin_amplitude(beta, lam):
    """``L^2``-normalizing constant of the Robin eigenfunction at a root ``lam``."""
    return SQRT2 * beta / math.sqrt(beta * beta + 2.0 * beta + lam)


def _brent(f, a, b, fa, fb, xtol, ftol, maxiter=200):
    """Brent's method on a sign-change bracket ``[a, b]``.

    Stops when the bracket is narrower than ``xtol`` (plus a few ulps) or
    ``|f| <= ftol``.
    """
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    c, fc = a, fa
    d = e = b - a
    eps = np.finfo(float).eps
    for _ in range(maxiter):
        if fb * fc > 0.0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * eps * abs(b) + 0.5 * xtol
        m = 0.5 * (c - b)
        if abs(m) <= tol1 or abs(fb) <= ftol:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                # inverse quadratic interpolation
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, m)
        fb = f(b)
    raise ToleranceNotReached(f"root not resolved to {xtol:.3e} within {maxiter} iterations")


def _robin_root(beta, k, tol):
    lo_edge = (k - 1) * math.pi
    hi_edge = k * math.pi
    nudge = 1e-9 * hi_edge
    f = lambda s: _h_of_s(beta, s)
    for _ in range(6):
        lo, hi = lo_edge + nudge, hi_edge - nudge
        flo, fhi = f(lo), f(hi)
        if flo * fhi < 0.0:
            break
        nudge /= 8.0
    else:
        raise BracketFailure(f"no sign change for k={k}, beta={beta!r}")
    # a few bisection steps make the bracket snug before the hybrid takes over
    for _ in range(4):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    s_guess = 0.5 * (lo + hi)
    scale = 2.0 * s_guess + beta + s_guess * s_guess / beta
    # bracket width on s <= tol * s/2 keeps lambda = s^2 within relative tol
    return _brent(f, lo, hi, flo, fhi, xtol=0.5 * tol * s_guess, ftol=1e-13 * scale)


def robin_eigs(beta, n, tol=DEFAULT_ROOT_TOL):
    """First ``n`` Robin eigenpairs for coefficient ``beta``.

    Roots are bracketed in ``s = sqrt(lambda)`` on ``((k-1) pi, k pi)``; at the
    exact endpoints ``h`` equals ``2 m pi (-1)^m``, so the bracket always has a
    sign change.  The ``lambda = 0`` root of ``h`` carries no eigenfunction and
    is excluded by opening the first bracket strictly above zero.
    """
    if not beta > 0.0:
        raise ValueError("beta must be positive")
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 < tol <= 1e-10:
        raise ValueError("tol must lie in (0, 1e-10]")
    bc = BoundarySpec.robin(beta)
    pairs = []
    for k in range(1, n + 1):
        s = _robin_root(bc.beta, k, tol)
        lam = s * s
        pairs.append(EigenPair(k, lam, robin_amplitude(bc.beta, lam), bc))
    return pairs


def eigenpairs(boundary, n, tol=DEFAULT_ROOT_TOL):
    """Dispatch to :func:`dirichlet_eigs` or :func:`robin_eigs`."""
    if boundary.is_dirichlet:
        return dirichlet_eigs(n)
    return robin_eigs(boundary.beta, n, tol)


def eigenfunction_eval(pair, x):
    x = np.asarray(x, dtype=float)
    if pair.boundary.is_dirichlet:
        out = pair.amplitude * np.sin(pair.index * math.pi * x)
    else:
        s = pair.sqrt_lam
        out = pair.amplitude * (np.sin(s * x) + (s / pair.boundary.beta) * np.cos(s * x))
    return out if out.ndim else float(out)


def eigenfunction_deriv(pair, x):
    x = np.asarray(x, dtype=float)
    if pair.boundary.is_dirichlet:
        w = pair.index * math.pi
        out = pair.amplitude * w * np.cos(w * x)
    else:
        s = pair.sqrt_lam
        out = pair.amplitude * s * (np.cos(s * x) - (s / pair.boundary.beta) * np.sin(s * x))
    return out if out.ndim else float(out)


def first_extremum(pair):
    """Location of the first interior extremum of the eigenfunction."""
    if pair.boundary.is_dirichlet:
        return 0.5 / pair.index
    s = pair.sqrt_lam
    # psi' = 0  <=>  tan(s x) = beta / s
    return math.atan2(pair.boundary.beta, s) / s


def aligned_sign(pair):
    """+1 or -1 so that ``sign * pair`` is positive at its first interior extremum."""
    return 1.0 if eigenfunction_eval(pair, first_extremum(pair)) >= 0.0 else -1.0
