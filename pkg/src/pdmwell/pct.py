"""Point canonical transformation from constant-mass to position-dependent mass.

A constant-mass problem ``(-d^2/du^2 + U(u)) phi = eps phi`` is mapped onto the
BenDaniel-Duke problem ``(-d/dx (1/M) d/dx + V_eff) psi = E psi`` for the mass
``M(x) = (1 + x/a)^-2`` on ``-a < x < inf`` through

    u(x)     = a_bar * a * log(x + a) + b_bar
    V_eff(x) = a_bar^2 U(u(x)) + M''/(4 M^2) - 7 M'^2/(16 M^3) + c_bar
    E_n      = a_bar^2 eps_n + c_bar
    psi_n(x) = lam * M(x)^(1/4) * phi_n(u(x))

Units are hbar = 2 m_0 = 1 throughout.
"""
import math
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .errors import BoundStateError, DomainError

__all__ = [
    "MassProfile",
    "PctMap",
    "SourcePotential",
    "mass",
    "mass_correction",
    "u_of_x",
    "map_potential",
    "map_energy",
    "map_wavefunction",
]


def _shifted(a, x):
    """Return (x + a) as float/array, raising if any x <= -a."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > -a)):
        raise DomainError(f"x must satisfy x > -a = {-a}")
    return x + a, x.ndim == 0


@dataclass(frozen=True)
class MassProfile:
    """The mass M(x) = (1 + x/a)^-2, infinite at x = -a and vanishing as x -> inf."""

    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"a must be positive, got {self.a!r}")

    def mass(self, x):
        y, scalar = _shifted(self.a, x)
        m = (self.a / y) ** 2
        return float(m) if scalar else m

    def mass_prime(self, x):
        y, scalar = _shifted(self.a, x)
        d = -2.0 * self.a**2 / y**3
        return float(d) if scalar else d

    def mass_second(self, x):
        y, scalar = _shifted(self.a, x)
        d = 6.0 * self.a**2 / y**4
        return float(d) if scalar else d

    def v(self, x):
        """Antiderivative of sqrt(M), with the integration constant dropped."""
        y, scalar = _shifted(self.a, x)
        v = self.a * np.log(y)
        return float(v) if scalar else v


@dataclass(frozen=True)
class PctMap:
    a_bar: float
    b_bar: float
    c_bar: float
    lam: float

    @classmethod
    def canonical(cls, a, c_bar):
        """a_bar = 1/a, b_bar = 0 so that u = log(x + a); lam = 1/sqrt(a)."""
        return cls(a_bar=1.0 / a, b_bar=0.0, c_bar=c_bar, lam=1.0 / math.sqrt(a))


class SourcePotential(Protocol):
    """Constant-mass exactly solvable model on -inf < u < inf."""

    @property
    def bound_count(self) -> int: ...

    def U(self, u): ...

    def epsilon(self, n: int) -> float: ...

    def phi(self, n: int, u): ...

    def norm(self, n: int) -> float: ...


def mass(profile: MassProfile, x):
    return profile.mass(x)


def mass_correction(profile: MassProfile) -> float:
    """M''/(4M^2) - 7M'^2/(16M^3), which is the constant -1/(4a^2) for this family."""
    return -0.25 / profile.a**2


def u_of_x(profile: MassProfile, pmap: PctMap, x):
    v = profile.v(x)
    return pmap.a_bar * v + pmap.b_bar


def map_potential(src: SourcePotential, profile: MassProfile, pmap: PctMap, x):
    u = u_of_x(profile, pmap, x)
    return pmap.a_bar**2 * src.U(u) + mass_correction(profile) + pmap.c_bar


def map_energy(src: SourcePotential, pmap: PctMap, n: int) -> float:
    if not 0 <= n < src.bound_count:
        raise BoundStateError(f"level {n} is not bound (bound_count={src.bound_count})")
    return pmap.a_bar**2 * src.epsilon(n) + pmap.c_bar


def map_wavefunction(src: SourcePotential, profile: MassProfile, pmap: PctMap, n: int, x):
    if not 0 <= n < src.bound_count:
        raise BoundStateError(f"level {n} is not bound (bound_count={src.bound_count})")
    u = u_of_x(profile, pmap, x)
    phi = np.asarray(src.phi(n, u), dtype=float)
    # M^(1/4) blows up at the wall where phi underflows to 0; the product tends to 0
    with np.errstate(over="ignore", invalid="ignore"):
        psi = pmap.lam * np.asarray(profile.mass(x)) ** 0.25 * phi
    psi = np.where(phi == 0.0, 0.0, psi)
    return float(psi) if psi.ndim == 0 else psi
