"""Acceleration kinematics and the map from (a, omega) to squeeze parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from .fock import Statistics

__all__ = [
    "C_SI",
    "AccelerationParams",
    "SqueezeParameter",
    "squeeze_bosonic",
    "squeeze_fermionic",
    "squeeze",
    "omega_from_squeeze",
    "unruh_temperature",
    "worldline",
    "rindler_to_minkowski",
    "line_element_check",
]

C_SI = constants.c
FERMIONIC_R_MAX = math.pi / 4


@dataclass(frozen=True)
class AccelerationParams:
    """Proper acceleration ``a``, Rindler frequency ``omega`` and light speed ``c``.

    Pass ``c=1`` to work in natural units, where ``omega / a`` is the
    dimensionless frequency directly.
    """

    a: float
    omega: float
    c: float = C_SI

    def __post_init__(self):
        if not self.a >= 0:
            raise ValueError(f"acceleration must be non-negative, got {self.a!r}")
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c!r}")

    @property
    def dimensionless_frequency(self) -> float:
        """``omega / (a / c)``; infinite for an inertial observer."""
        if self.a == 0:
            return math.inf
        return self.omega * self.c / self.a


@dataclass(frozen=True)
class SqueezeParameter:
    r: float
    statistics: Statistics = Statistics.BOSONIC
    omega_dimensionless: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "statistics", Statistics(self.statistics))
        if not self.r >= 0:
            raise ValueError(f"r must be non-negative, got {self.r!r}")
        if self.statistics is Statistics.FERMIONIC and self.r > FERMIONIC_R_MAX + 1e-15:
            raise ValueError(f"fermionic r must lie in [0, pi/4], got {self.r!r}")

    def __float__(self):
        return float(self.r)


def _boltzmann_root(params: AccelerationParams) -> tuple[float, float]:
    big_omega = params.dimensionless_frequency
    return big_omega, (0.0 if math.isinf(big_omega) else math.exp(-math.pi * big_omega))


def squeeze_bosonic(params: AccelerationParams) -> SqueezeParameter:
    """``r`` with ``tanh r = exp(-pi Omega)``."""
    big_omega, x = _boltzmann_root(params)
    if x == 0.0:
        return SqueezeParameter(0.0, Statistics.BOSONIC, big_omega)
    # artanh(x) = (log1p(x) - log(1 - x)) / 2; 1 - x comes from expm1 when x is near 1
    if x < 0.5:
        log_one_minus_x = math.log1p(-x)
    else:
        log_one_minus_x = math.log(-math.expm1(-math.pi * big_omega))
    r = 0.5 * (math.log1p(x) - log_one_minus_x)
    return SqueezeParameter(r, Statistics.BOSONIC, big_omega)


def squeeze_fermionic(params: AccelerationParams) -> SqueezeParameter:
    """``r`` with ``tan r = exp(-pi Omega)``; bounded by pi/4."""
    big_omega, x = _boltzmann_root(params)
    return SqueezeParameter(math.atan(x), Statistics.FERMIONIC, big_omega)


def squeeze(params: AccelerationParams, statistics: Statistics | str) -> SqueezeParameter:
    if Statistics(statistics) is Statistics.FERMIONIC:
        return squeeze_fermionic(params)
    return squeeze_bosonic(params)


def omega_from_squeeze(r: float, statistics: Statistics | str = Statistics.BOSONIC) -> float:
    """Invert the squeeze map: the dimensionless frequency producing ``r``."""
    stats = Statistics(statistics)
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return math.inf
    x = math.tanh(r) if stats is Statistics.BOSONIC else math.tan(r)
    if stats is Statistics.FERMIONIC and r > FERMIONIC_R_MAX:
        raise ValueError("fermionic r must lie in [0, pi/4]")
    return -math.log(x) / math.pi


def unruh_temperature(params: AccelerationParams, natural_units: bool = False) -> float:
    """``hbar a / (2 pi c k_B)`` in kelvin, or ``a / (2 pi)`` with hbar = c = k_B = 1."""
    if natural_units:
        return params.a / (2 * math.pi)
    return constants.hbar * params.a / (2 * math.pi * params.c * constants.k)


def worldline(tau, a: float):
    """Minkowski ``(t, z)`` of the uniformly accelerated observer at proper time ``tau``."""
    if not a > 0:
        raise ValueError("worldline needs a strictly positive acceleration")
    tau = np.asarray(tau, dtype=float)
    return np.sinh(a * tau) / a, np.cosh(a * tau) / a


def rindler_to_minkowski(eta, zeta):
    """``t = zeta sinh(eta)``, ``z = zeta cosh(eta)``; negative zeta lands in the left wedge."""
    eta = np.asarray(eta, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    return zeta * np.sinh(eta), zeta * np.cosh(eta)


def line_element_check(eta: float, zeta: float, d_eta: float, d_zeta: float,
                       h: float = 1e-6) -> tuple[float, float]:
    """Return ``(dz^2 - dt^2, dzeta^2 - zeta^2 deta^2)`` for a displacement.

    The Minkowski side pushes the displacement through a central-difference
    Jacobian of :func:`rindler_to_minkowski`, independent of the analytic
    metric on the Rindler side.
    """
    def jac_column(de, dz):
        tp, zp = rindler_to_minkowski(eta + h * de, zeta + h * dz)
        tm, zm = rindler_to_minkowski(eta - h * de, zeta - h * dz)
        return (tp - tm) / (2 * h), (zp - zm) / (2 * h)

    dt_e, dz_e = jac_column(1.0, 0.0)
    dt_z, dz_z = jac_column(0.0, 1.0)
    dt = dt_e * d_eta + dt_z * d_zeta
    dz = dz_e * d_eta + dz_z * d_zeta
    return float(dz * dz - dt * dt), float(d_zeta ** 2 - zeta ** 2 * d_eta ** 2)
