"""Special functions needed by the closed-form wavefunctions.

Polynomials are evaluated with forward three-term recurrences in the degree.
All functions accept either a scalar or a numpy array as the argument and
return the same kind of object.
"""
import math

import numpy as np
from scipy.special import zeta

from .errors import DomainError

__all__ = ["log_gamma", "laguerre", "jacobi", "gegenbauer"]

_EULER_GAMMA = 0.57721566490153286061
# zeta(k) for k = 2..59, coefficients of the Taylor series of lnGamma(1+x)
_ZETA = [float(zeta(k)) for k in range(2, 60)]
_SERIES_WINDOW = 0.3


def _log_gamma_1p(x):
    # lnGamma(1+x) = -gamma*x + sum_{k>=2} (-1)^k zeta(k) x^k / k, |x| < 1
    s = 0.0
    for k in range(len(_ZETA) + 1, 1, -1):
        s = s * x + (-1) ** k * _ZETA[k - 2] / k
    return x * (-_EULER_GAMMA + x * s)


def log_gamma(z):
    """ln Gamma(z) for real z > 0.

    Near the roots z = 1 and z = 2 the Taylor series of lnGamma(1+x) is used so
    that the *relative* error stays at the 1e-14 level; elsewhere the libm
    ``lgamma`` is accurate to a few ulps.
    """
    z = float(z)
    if not z > 0.0:
        raise DomainError(f"log_gamma requires z > 0, got {z!r}")
    if abs(z - 1.0) < _SERIES_WINDOW:
        return _log_gamma_1p(z - 1.0)
    if abs(z - 2.0) < _SERIES_WINDOW:
        return _log_gamma_1p(z - 2.0) + math.log1p(z - 2.0)
    return math.lgamma(z)


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _finish(value, scalar):
    return float(value) if scalar else value


def _check_degree(n):
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    return int(n)


def laguerre(n, alpha, z):
    """Generalized Laguerre polynomial L_n^(alpha)(z)."""
    n = _check_degree(n)
    z, scalar = _as_array(z)
    prev = np.ones_like(z)
    if n == 0:
        return _finish(prev, scalar)
    cur = 1.0 + alpha - z
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - z) * cur - (k + alpha) * prev) / (k + 1)
    return _finish(cur, scalar)


def jacobi(n, alpha, beta, t):
    """Jacobi polynomial P_n^(alpha, beta)(t), alpha, beta > -1."""
    n = _check_degree(n)
    if alpha <= -1.0 or beta <= -1.0:
        raise DomainError(f"jacobi requires alpha, beta > -1, got ({alpha}, {beta})")
    t, scalar = _as_array(t)
    prev = np.ones_like(t)
    if n == 0:
        return _finish(prev, scalar)
    ab = alpha + beta
    cur = 0.5 * (alpha - beta) + 0.5 * (ab + 2.0) * t
    for k in range(1, n):
        c = 2 * k + ab
        a1 = 2.0 * (k + 1) * (k + ab + 1) * c
        a2 = (c + 1) * (alpha * alpha - beta * beta)
        a3 = (c + 1) * (c + 2) * c
        a4 = 2.0 * (k + alpha) * (k + beta) * (c + 2)
        prev, cur = cur, ((a2 + a3 * t) * cur - a4 * prev) / a1
    return _finish(cur, scalar)


def gegenbauer(n, lam, t):
    """Gegenbauer (ultraspherical) polynomial C_n^(lam)(t), lam > 0."""
    n = _check_degree(n)
    if lam <= 0.0:
        raise DomainError(f"gegenbauer requires lambda > 0, got {lam!r}")
    t, scalar = _as_array(t)
    prev = np.ones_like(t)
    if n == 0:
        return _finish(prev, scalar)
    cur = 2.0 * lam * t
    for k in range(1, n):
        prev, cur = cur, (2.0 * (k + lam) * t * cur - (k + 2.0 * lam - 1.0) * prev) / (k + 1)
    return _finish(cur, scalar)
