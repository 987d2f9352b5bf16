"""Mittag-Leffler function ``E_alpha(-x)`` for ``0 < alpha <= 1`` and ``x >= 0``.

Two independent evaluation routes are provided:

* :func:`ml_series` sums the defining power series.  For ``x > 1`` the
  alternating terms grow to roughly ``exp(x**(1/alpha))`` before decaying,
  so the sum is carried out in extended precision sized to that peak.
* :func:`ml_integral` integrates the completely monotone spectral
  representation

  .. math::

     E_\\alpha(-t^\\alpha) = \\int_0^\\infty e^{-rt} K_\\alpha(r)\\,dr,\\qquad
     K_\\alpha(r) = \\frac{\\sin\\alpha\\pi}{\\pi}
         \\frac{r^{\\alpha-1}}{r^{2\\alpha} + 2r^\\alpha\\cos\\alpha\\pi + 1}.

:func:`ml` dispatches between them and uses ``exp(-x)`` when ``alpha == 1``.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

from ._kronrod import gauss_kronrod
from .errors import NonConvergence

DEFAULT_TOL = 1e-14
SWITCH_X = 5.0
MAX_TERMS = 2000


@dataclass(frozen=True)
class MLQuery:
    """Validated argument bundle for the Mittag-Leffler evaluators."""

    alpha: float
    x: float
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not self.x >= 0.0 or math.isinf(self.x):
            raise ValueError(f"x must be finite and non-negative, got {self.x!r}")
        if not 0.0 < self.tol < 1e-6:
            raise ValueError(f"tol must lie in (0, 1e-6), got {self.tol!r}")


def _log_term(alpha, x, k):
    return k * math.log(x) - math.lgamma(alpha * k + 1.0)


def series_terms_needed(alpha, x, tol=DEFAULT_TOL):
    """Predict how many series terms :func:`ml_series` will consume.

    The estimate works on ``log|term|`` in double precision; it is used by
    the dispatcher to avoid the series where the term cap would be hit.
    """
    if x == 0.0:
        return 1
    # terms increase while alpha*log(alpha*k) < log(x), i.e. up to k ~ x**(1/alpha)/alpha
    k = int(math.ceil(x ** (1.0 / alpha) / alpha)) if x > 1.0 else 0
    floor = math.log(tol) + min(0.0, math.log(_result_floor(alpha, x)))
    while _log_term(alpha, x, k) > floor:
        k += 1
    return k + 1


def _result_floor(alpha, x):
    # E_alpha(-x) >= 1 / (1 + Gamma(1 - alpha) x) for 0 < alpha < 1
    if alpha >= 1.0:
        return math.exp(-x)
    return 1.0 / (1.0 + math.gamma(1.0 - alpha) * x)


def _rational_order(alpha, max_den=64):
    frac = Fraction(alpha).limit_denominator(max_den)
    if abs(float(frac) - alpha) <= 4 * np.finfo(float).eps * alpha:
        return frac
    return None


def _series_float(alpha, x, tol, max_terms):
    # all terms are bounded by ~1.13 here, so double precision suffices
    terms = [1.0]
    s = 1.0
    for k in range(1, max_terms):
        term = math.exp(_log_term(alpha, x, k)) if x > 0 else 0.0
        if k % 2:
            term = -term
        terms.append(term)
        if abs(term) <= tol * abs(s) * 0.1:
            return math.fsum(terms)
        s += term
    raise NonConvergence(f"series for E_{alpha}(-{x}) needs more than {max_terms} terms")


def _series_mp(alpha, x, tol, max_terms):
    peak = max(_log_term(alpha, x, k) for k in range(0, int(x ** (1.0 / alpha) / alpha) + 2))
    prec = 64 + int(peak / math.log(2.0)) + int(-math.log2(tol))
    frac = _rational_order(alpha)
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        xm = gmpy2.mpfr(x)
        s = gmpy2.mpfr(1)
        power = gmpy2.mpfr(1)
        if frac is not None:
            # 1/Gamma(alpha*k + 1) per residue class k mod q: stepping k -> k + q
            # shifts the argument by the integer p, so the update is an exact
            # rational factor q**p / prod_j (p*(k - q) + j*q).
            p, q = frac.numerator, frac.denominator
            qp = q**p
            recip = [1 / gmpy2.gamma(gmpy2.mpfr(p) / q * k + 1) for k in range(q)]
        else:
            a = gmpy2.mpfr(alpha)
        past_peak = False
        prev = gmpy2.mpfr(1)
        for k in range(1, max_terms):
            power *= -xm
            if frac is not None:
                r = k % q
                if k >= q:
                    base = p * (k - q)
                    denom = 1
                    for j in range(1, p + 1):
                        denom *= base + j * q
                    recip[r] = recip[r] * qp / denom
                term = power * recip[r]
            else:
                term = power / gmpy2.gamma(a * k + 1)
            s += term
            mag = abs(term)
            if mag < prev:
                past_peak = True
            prev = mag
            if past_peak and mag <= tol * 0.1 * abs(s):
                return float(s)
    raise NonConvergence(f"series for E_{alpha}(-{x}) needs more than {max_terms} terms")


def ml_series(alpha, x, tol=DEFAULT_TOL, max_terms=MAX_TERMS):
    """Sum ``sum_k (-x)**k / Gamma(alpha*k + 1)``.

    Raises :class:`NonConvergence` if ``max_terms`` terms do not reach the
    stopping rule.  Intended for small and moderate ``x``.
    """
    q = MLQuery(alpha, x, tol)
    if q.x == 0.0:
        return 1.0
    if q.x <= 1.0:
        val = _series_float(q.alpha, q.x, q.tol, max_terms)
    else:
        val = _series_mp(q.alpha, q.x, q.tol, max_terms)
    return min(max(val, 0.0), 1.0)


def ml_integral(alpha, x, tol=DEFAULT_TOL):
    """Evaluate ``E_alpha(-x)`` from its spectral integral representation.

    With ``r = u**(1/alpha)`` the density turns into a rational kernel; the
    half line is folded onto ``[0, 1]`` via ``u -> 1/u``:

    ``E = sin(a*pi)/(a*pi) * int_0^1 [exp(-t u^(1/a)) + exp(-t u^(-1/a))]
    / (u^2 + 2u cos(a*pi) + 1) du`` with ``t = x**(1/a)``.

    Requires ``0 < alpha < 1`` and ``x > 0``.
    """
    q = MLQuery(alpha, x, tol)
    if not q.alpha < 1.0:
        raise ValueError("ml_integral needs alpha < 1")
    if not q.x > 0.0:
        raise ValueError("ml_integral needs x > 0")
    a = q.alpha
    inv = 1.0 / a
    t = q.x ** inv
    c = math.cos(a * math.pi)

    def integrand(u):
        den = u * u + 2.0 * c * u + 1.0
        with np.errstate(divide="ignore", over="ignore"):
            near = np.exp(-t * u ** inv)
            far = np.exp(-t * u ** (-inv))
        return (near + far) / den

    # the near-zero layer has width ~ t**(-alpha) = 1/x
    brk = [min(0.5, (s / t) ** a) for s in (1.0, 8.0, 64.0)]
    if c < 0.0:
        brk.append(-c)
    val = gauss_kronrod(integrand, 0.0, 1.0, rtol=q.tol, breakpoints=brk)
    return val * math.sin(a * math.pi) / (a * math.pi)


def ml(alpha, x, tol=DEFAULT_TOL):
    """``E_alpha(-x)``: series for ``x <= 5`` (when it fits the term cap), integral otherwise."""
    q = MLQuery(alpha, x, tol)
    if q.alpha == 1.0:
        return math.exp(-q.x)
    if q.x == 0.0:
        return 1.0
    if q.x <= SWITCH_X and series_terms_needed(q.alpha, q.x, q.tol) <= MAX_TERMS:
        return ml_series(q.alpha, q.x, q.tol)
    return ml_integral(q.alpha, q.x, q.tol)


def ml_array(alpha, xs, tol=DEFAULT_TOL):
    """Apply :func:`ml` elementwise; returns an array shaped like ``xs``."""
    xs = np.asarray(xs, dtype=float)
    out = np.empty_like(xs)
    flat = out.reshape(-1)
    for i, v in enumerate(xs.reshape(-1)):
        flat[i] = ml(alpha, float(v), tol)
    return out


def decay_bound(alpha, x):
    """Classical upper bound ``1 / (1 + x / Gamma(1 + alpha))`` for ``E_alpha(-x)``."""
    return 1.0 / (1.0 + x / math.gamma(1.0 + alpha))
