"""Parametric down-conversion as a two-mode Bogoliubov transformation.

Output operators relate to the inputs by ``b_S = s11 a_S + s12 a_I^dag`` and
``b_I^dag = s21 a_S + s22 a_I^dag``. With ``s11 = cosh r`` and
``|s21| = sinh r`` the input vacuum is exactly the Rindler two-mode squeezed
vacuum, and the idler alone looks thermal.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import constants

from .fock import (
    DensityOperator,
    ModeLabel,
    StateVector,
    Statistics,
    apply_annihilation,
    apply_creation,
    reduce_pure,
)

__all__ = [
    "SqueezeMatrix",
    "BogoliubovResiduals",
    "validate_bogoliubov",
    "invert_bogoliubov",
    "pdc_vacuum",
    "input_annihilators",
    "photon_number_difference",
    "reduced_thermal_pdc",
    "unruh_temperature_from_matrix",
    "SIGNAL",
    "IDLER",
]

SIGNAL = ModeLabel("S", Statistics.BOSONIC)
IDLER = ModeLabel("I", Statistics.BOSONIC)
RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class SqueezeMatrix:
    s11: complex
    s12: complex
    s21: complex
    s22: complex

    def __post_init__(self):
        for name in ("s11", "s12", "s21", "s22"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def two_mode(cls, r: float, phi: float = 0.0) -> "SqueezeMatrix":
        """Squeezer with ``s11 = s22 = cosh r``, ``s12 = e^{i phi} sinh r``, ``s21 = e^{-i phi} sinh r``.

        The conjugate phase on ``s21`` is what keeps ``[b_S, b_I] = 0`` for
        ``phi != 0``.
        """
        if r < 0:
            raise ValueError("r must be non-negative")
        ch, sh = math.cosh(r), math.sinh(r)
        return cls(ch, cmath.exp(1j * phi) * sh, cmath.exp(-1j * phi) * sh, ch)

    @classmethod
    def identity(cls) -> "SqueezeMatrix":
        return cls(1, 0, 0, 1)

    def as_array(self) -> np.ndarray:
        return np.array([[self.s11, self.s12], [self.s21, self.s22]], dtype=complex)

    @property
    def ratio(self) -> complex:
        """``conj(s21) / conj(s11)``, the geometric ratio of the input vacuum."""
        return np.conj(self.s21) / np.conj(self.s11)

    @property
    def squeezing(self) -> float:
        """``r`` with ``tanh r = |s21 / s11|``."""
        return math.atanh(abs(self.s21) / abs(self.s11))


class BogoliubovResiduals(NamedTuple):
    signal_norm: float
    idler_norm: float
    cross: float

    @property
    def valid(self) -> bool:
        return max(self) < RESIDUAL_TOL


def validate_bogoliubov(s: SqueezeMatrix) -> BogoliubovResiduals:
    """Residuals of the three commutator constraints on the matrix entries."""
    return BogoliubovResiduals(
        abs(abs(s.s11) ** 2 - abs(s.s12) ** 2 - 1.0),
        abs(abs(s.s22) ** 2 - abs(s.s21) ** 2 - 1.0),
        abs(s.s11 * np.conj(s.s21) - s.s12 * np.conj(s.s22)),
    )


def _require_valid(s: SqueezeMatrix):
    res = validate_bogoliubov(s)
    if not res.valid:
        raise ValueError(f"not a Bogoliubov matrix; residuals {tuple(res)}")


def invert_bogoliubov(s: SqueezeMatrix) -> SqueezeMatrix:
    """Matrix mapping ``(b_S, b_I^dag)`` back to ``(a_S, a_I^dag)``."""
    _require_valid(s)
    return SqueezeMatrix(np.conj(s.s11), -np.conj(s.s21), -np.conj(s.s12), np.conj(s.s22))


def pdc_vacuum(s: SqueezeMatrix, n_max: int) -> StateVector:
    """Input vacuum ``sum_n ratio^n / |s11| |n>_S |n>_I`` built by the pair recursion."""
    _require_valid(s)
    if abs(s.s21) >= abs(s.s11):
        raise ValueError("|s21| >= |s11|: the input vacuum is not normalizable")
    ratio = s.ratio
    amps = {}
    a_n = 1.0 / abs(s.s11)
    for n in range(n_max + 1):
        amps[(n, n)] = a_n
        a_n = ratio * a_n
    deficit = abs(ratio) ** (2 * (n_max + 1))
    return StateVector((SIGNAL, IDLER), amps, n_max, deficit)


def input_annihilators(s: SqueezeMatrix, state: StateVector) -> tuple[StateVector, StateVector]:
    """Apply ``a_S`` and ``a_I`` written in output operators to ``state``.

    ``a_S = conj(s11) b_S - conj(s21) b_I^dag`` and
    ``a_I = -s12 b_S^dag + s22 b_I``.
    """
    a_s = (apply_annihilation(state, SIGNAL).scale(np.conj(s.s11))
           + apply_creation(state, IDLER).scale(-np.conj(s.s21)))
    a_i = (apply_creation(state, SIGNAL).scale(-s.s12)
           + apply_annihilation(state, IDLER).scale(s.s22))
    return a_s, a_i


def photon_number_difference(state: StateVector) -> float:
    """``<N_S - N_I>`` of a normalized-on-the-fly two-mode state."""
    if len(state.modes) != 2:
        raise ValueError("photon_number_difference needs a two-mode state")
    norm2 = sum(abs(a) ** 2 for a in state.amplitudes.values())
    if norm2 == 0:
        raise ValueError("zero state")
    diff = sum(abs(a) ** 2 * (k[0] - k[1]) for k, a in state.amplitudes.items())
    return float(diff / norm2)


def reduced_thermal_pdc(s: SqueezeMatrix, n_max: int, observed: ModeLabel = IDLER) -> DensityOperator:
    """State of one output mode with the other traced out."""
    return reduce_pure(pdc_vacuum(s, n_max), [observed], [(n,) for n in range(n_max + 1)])


def unruh_temperature_from_matrix(s: SqueezeMatrix, omega_idler: float, natural_units: bool = False,
                                  convention: str = "thermal") -> float:
    """Temperature at which the idler's occupation is a Bose-Einstein distribution.

    ``convention="thermal"`` returns ``hbar omega / (2 k_B ln|s11/s21|)``, the
    temperature that reproduces the idler ratio ``|s21/s11|^2 =
    exp(-hbar omega / k_B T)``. ``convention="printed"`` returns
    ``hbar omega / (2 pi k_B ln|s11/s21|)``, which is smaller by a factor pi.
    A vanishing ``s21`` is the zero-temperature limit.
    """
    if convention not in ("thermal", "printed"):
        raise ValueError(f"unknown convention {convention!r}")
    if abs(s.s11) <= abs(s.s21):
        raise ValueError("|s11| must exceed |s21|")
    if s.s21 == 0:
        return 0.0
    log_ratio = math.log(abs(s.s11) / abs(s.s21))
    hbar_over_kb = 1.0 if natural_units else constants.hbar / constants.k
    factor = 2.0 if convention == "thermal" else 2.0 * math.pi
    return hbar_over_kb * omega_idler / (factor * log_ratio)
