"""Exactly solvable source potentials and the semi-infinite PDM wells built from them.

Sources (constant mass, -inf < u < inf):

* ``MorseSource``:        U(u) = B^2 e^{-2u} - B(2A+1) e^{-u}
* ``RosenMorse2Source``:  U(u) = -A(A+1) sech^2 u + 2B tanh u

Derived wells (mass (1+x/a)^-2 on -a < x < inf, infinite wall at x = -a):

* ``HarmonicPdmWell``:  V_eff = a^2 w^2 x^2 / (4 (x+a)^2), from the Morse source
* ``SechPdmWell``:      V_eff = V0 (1/[(x+a)^2+1]^2 - 1/[(x+a)^2+1]), from
  Rosen-Morse II with B = 0

Normalization constants are carried as logarithms; the printed closed forms
overflow double precision already for moderate parameters.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import pct
from .errors import BoundStateError, ConstructionError, DomainError
from .specfun import gegenbauer, jacobi, laguerre, log_gamma

__all__ = [
    "count_below",
    "MorseSource",
    "RosenMorse2Source",
    "PdmWell",
    "HarmonicPdmWell",
    "SechPdmWell",
]

# exp() of anything below this underflows to zero
_EXP_FLOOR = -745.0


def count_below(bound):
    """Number of integers n >= 0 with n < bound (strict).

    A relative slack of 1e-12 keeps floating-point noise in ``bound`` (e.g.
    (9 - 1)/2 computed as 3.9999999999999996 or 4.000000000000001) from adding or
    dropping the degenerate threshold level.
    """
    slack = 1e-12 * max(1.0, abs(bound))
    if bound <= slack:
        return 0
    return int(math.ceil(bound - slack))


def _exp_times(log_mag, poly):
    """exp(log_mag) * poly with underflowed entries set to exactly 0."""
    log_mag = np.asarray(log_mag, dtype=float)
    poly = np.asarray(poly, dtype=float)
    keep = log_mag > _EXP_FLOOR
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.where(keep, np.exp(np.where(keep, log_mag, 0.0)) * poly, 0.0)
    return float(out) if out.ndim == 0 else out


def _log_sech(u):
    return math.log(2.0) - np.logaddexp(u, -u)


def _log_one_minus_tanh(u):
    return math.log(2.0) - np.logaddexp(0.0, 2.0 * u)


def _log_one_plus_tanh(u):
    return math.log(2.0) - np.logaddexp(0.0, -2.0 * u)


class _Source:
    def _check_level(self, n):
        if int(n) != n or not 0 <= n < self.bound_count:
            raise BoundStateError(f"level {n} is not bound (bound_count={self.bound_count})")
        return int(n)

    def norm(self, n):
        return math.exp(self.log_norm(n))


@dataclass(frozen=True)
class MorseSource(_Source):
    A: float
    B: float

    def __post_init__(self):
        if not (self.A >= 0 and self.B > 0):
            raise ConstructionError(f"Morse source needs A >= 0, B > 0, got A={self.A}, B={self.B}")

    @property
    def bound_count(self):
        return count_below(self.A)

    def U(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(over="ignore"):
            w = np.exp(-u)
            out = self.B**2 * w * w - self.B * (2 * self.A + 1) * w
        return float(out) if out.ndim == 0 else out

    def epsilon(self, n):
        n = self._check_level(n)
        return -((self.A - n) ** 2)

    def log_norm(self, n):
        n = self._check_level(n)
        s = self.A - n
        return s * math.log(2 * self.B) + 0.5 * (
            log_gamma(n + 1) + math.log(2 * s) - log_gamma(2 * self.A + 1 - n)
        )

    def phi(self, n, u):
        n = self._check_level(n)
        s = self.A - n
        u = np.asarray(u, dtype=float)
        with np.errstate(over="ignore"):
            w = self.B * np.exp(-u)
        log_mag = self.log_norm(n) - s * u - w
        z = np.where(log_mag > _EXP_FLOOR, 2.0 * w, 0.0)
        return _exp_times(log_mag, laguerre(n, 2 * s, z))


@dataclass(frozen=True)
class RosenMorse2Source(_Source):
    A: float
    B: float = 0.0

    def __post_init__(self):
        if not self.A > 0:
            raise ConstructionError(f"Rosen-Morse II source needs A > 0, got {self.A}")
        if not abs(self.B) < self.A**2:
            raise ConstructionError(f"Rosen-Morse II source needs |B| < A^2, got B={self.B}")

    @property
    def bound_count(self):
        return count_below(self.A - math.sqrt(abs(self.B)))

    def U(self, u):
        u = np.asarray(u, dtype=float)
        sech2 = np.exp(2.0 * _log_sech(u))
        out = -self.A * (self.A + 1) * sech2 + 2 * self.B * np.tanh(u)
        return float(out) if out.ndim == 0 else out

    def epsilon(self, n):
        n = self._check_level(n)
        s = self.A - n
        return -(s**2) - self.B**2 / s**2

    def log_norm(self, n):
        n = self._check_level(n)
        A, s = self.A, self.A - n
        if self.B == 0:
            return (
                log_gamma(2 * s + 1)
                - s * math.log(2.0)
                - log_gamma(s + 1)
                + 0.5 * (math.log(s) + log_gamma(n + 1) - log_gamma(2 * A - n + 1))
            )
        b = self.B / s
        return (n - A) * math.log(2.0) + 0.5 * (
            log_gamma(n + 1)
            + log_gamma(2 * A - n + 1)
            + math.log(s * s - b * b)
            - math.log(s)
            - log_gamma(A + 1 + b)
            - log_gamma(A + 1 - b)
        )

    def phi(self, n, u):
        n = self._check_level(n)
        s = self.A - n
        u = np.asarray(u, dtype=float)
        t = np.tanh(u)
        if self.B == 0:
            log_mag = self.log_norm(n) + s * _log_sech(u)
            return _exp_times(log_mag, gegenbauer(n, s + 0.5, t))
        b = self.B / s
        log_mag = (
            self.log_norm(n)
            + 0.5 * (s + b) * _log_one_minus_tanh(u)
            + 0.5 * (s - b) * _log_one_plus_tanh(u)
        )
        return _exp_times(log_mag, jacobi(n, s + b, s - b, t))


class PdmWell:
    """Common surface of the derived wells; subclasses fill in the closed forms."""

    a: float

    @property
    def profile(self):
        return pct.MassProfile(self.a)

    def mass(self, x):
        return self.profile.mass(x)

    def energies(self):
        return [self.energy(n) for n in range(self.bound_count)]

    def norm(self, n):
        return math.exp(self.log_norm(n))

    def _check_level(self, n):
        if int(n) != n or not 0 <= n < self.bound_count:
            raise BoundStateError(f"level {n} is not bound (bound_count={self.bound_count})")
        return int(n)

    def _y(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(~(x > -self.a)):
            raise DomainError(f"x must satisfy x > -a = {-self.a}")
        return x + self.a

    def _wall(self, x, inside):
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, math.inf)
        mask = x > -self.a
        if np.any(mask):
            out[mask] = inside(x[mask])
        return float(out) if out.ndim == 0 else out

    def map_source(self):
        """The source potential and transformation producing this well."""
        return self.source, self.pct_map

    def params(self):
        raise NotImplementedError


@dataclass(frozen=True)
class HarmonicPdmWell(PdmWell):
    """Harmonic-like well with V_eff = M(x) w^2 x^2 / 4."""

    omega: float
    a: float

    kind = "harmonic"

    def __post_init__(self):
        if not (self.omega > 0 and self.a > 0):
            raise ConstructionError(f"omega and a must be positive, got omega={self.omega}, a={self.a}")
        if self.bound_count == 0:
            raise ConstructionError("no bound state: omega*a^2 <= 1")

    @property
    def wa2(self):
        return self.omega * self.a**2

    @property
    def A(self):
        return 0.5 * (self.wa2 - 1.0)

    @property
    def B(self):
        return 0.5 * self.omega * self.a**3

    @property
    def c_bar(self):
        return 0.25 * self.omega**2 * self.a**2 + 0.25 / self.a**2

    @property
    def source(self):
        return MorseSource(self.A, self.B)

    @property
    def pct_map(self):
        return pct.PctMap.canonical(self.a, self.c_bar)

    @property
    def bound_count(self):
        return count_below(0.5 * (self.wa2 - 1.0))

    @property
    def threshold(self):
        """Continuum onset, the x -> inf limit of V_eff."""
        return 0.25 * self.omega**2 * self.a**2

    def potential(self, x):
        """V_eff(x); +inf at and beyond the wall x <= -a."""
        c = 0.25 * self.a**2 * self.omega**2
        return self._wall(x, lambda xs: c * xs**2 / (xs + self.a) ** 2)

    def energy(self, n):
        n = self._check_level(n)
        return self.omega * (n + 0.5) - n * (n + 1) / self.a**2

    def log_norm(self, n):
        n = self._check_level(n)
        return (0.5 * (self.wa2 - 1.0) - n) * math.log(self.omega * self.a**3) + 0.5 * (
            log_gamma(n + 1) + math.log(self.wa2 - 1.0 - 2 * n) - log_gamma(self.wa2 - n)
        )

    def psi(self, n, x):
        n = self._check_level(n)
        y = self._y(x)
        c = self.omega * self.a**3
        log_mag = self.log_norm(n) + (n - 0.5 * self.wa2) * np.log(y) - 0.5 * c / y
        z = np.where(log_mag > _EXP_FLOOR, c / y, 0.0)
        return _exp_times(log_mag, laguerre(n, self.wa2 - 2 * n - 1, z))

    def params(self):
        return {"omega": self.omega, "a": self.a}


@dataclass(frozen=True)
class SechPdmWell(PdmWell):
    """Semi-infinite well V0 (1/[(x+a)^2+1]^2 - 1/[(x+a)^2+1]) with minimum -V0/4 at x = 1 - a."""

    a: float
    V0: float

    kind = "sech"

    def __post_init__(self):
        if not (self.a > 0 and self.V0 > 0):
            raise ConstructionError(f"a and V0 must be positive, got a={self.a}, V0={self.V0}")
        if self.bound_count == 0:
            raise ConstructionError("no bound state: nu <= 1")

    @property
    def nu(self):
        return 0.5 * math.sqrt(1.0 + self.a**2 * self.V0)

    @property
    def A(self):
        return self.nu - 0.5

    @property
    def c_bar(self):
        return 0.25 / self.a**2

    @property
    def source(self):
        return RosenMorse2Source(self.A, 0.0)

    @property
    def pct_map(self):
        return pct.PctMap.canonical(self.a, self.c_bar)

    @property
    def bound_count(self):
        return count_below(self.nu - 1.0)

    @property
    def threshold(self):
        return 0.0

    @property
    def x_min(self):
        return 1.0 - self.a

    def potential(self, x):
        """V_eff(x); +inf at and beyond the wall x <= -a."""

        def inside(xs):
            q = 1.0 / ((xs + self.a) ** 2 + 1.0)
            return self.V0 * (q * q - q)

        return self._wall(x, inside)

    def energy(self, n):
        n = self._check_level(n)
        return -(self.nu - n) * (self.nu - n - 1) / self.a**2

    def log_norm(self, n):
        n = self._check_level(n)
        s = self.nu - n
        return (
            log_gamma(2 * s)
            - log_gamma(s - 0.5)
            + 0.5 * (log_gamma(n + 1) - math.log(s - 0.5) - log_gamma(2 * self.nu - n))
        )

    def psi(self, n, x):
        n = self._check_level(n)
        s = self.nu - n
        y = self._y(x)
        log_y = np.log(y)
        log_mag = self.log_norm(n) + (s - 1.0) * log_y - (s - 0.5) * np.logaddexp(0.0, 2.0 * log_y)
        # (y^2 - 1)/(y^2 + 1) without forming y^2 for large y
        r = np.exp(-2.0 * np.abs(log_y))
        t = np.sign(log_y) * (1.0 - r) / (1.0 + r)
        return _exp_times(log_mag, gegenbauer(n, s, t))

    def params(self):
        return {"a": self.a, "V0": self.V0}
