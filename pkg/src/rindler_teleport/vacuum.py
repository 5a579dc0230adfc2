"""Minkowski vacuum and one-particle states expanded over a region I/II mode pair."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import (
    DensityOperator,
    ModeLabel,
    StateVector,
    Statistics,
    apply_annihilation,
    apply_creation,
)
from .relativity import FERMIONIC_R_MAX

__all__ = [
    "ModePair",
    "bosonic_vacuum",
    "bosonic_one_particle",
    "fermionic_vacuum",
    "fermionic_one_particle",
    "minkowski_creation",
    "thermal_reduction_bosonic",
    "thermal_reduction_fermionic",
    "vacuum_tail",
    "one_particle_tail",
    "check_r",
]


@dataclass(frozen=True)
class ModePair:
    """One correlated (region I, region II) Rindler mode pair."""

    region_I: ModeLabel
    region_II: ModeLabel

    def __post_init__(self):
        if self.region_I.name == self.region_II.name:
            raise ValueError("region I and II labels must differ")
        if self.region_I.statistics is not self.region_II.statistics:
            raise ValueError("mode pair mixes statistics")

    @property
    def statistics(self) -> Statistics:
        return self.region_I.statistics

    @property
    def modes(self) -> tuple[ModeLabel, ModeLabel]:
        return self.region_I, self.region_II

    @classmethod
    def named(cls, prefix: str, statistics: Statistics | str = Statistics.BOSONIC) -> "ModePair":
        stats = Statistics(statistics)
        return cls(ModeLabel(f"{prefix}_I", stats), ModeLabel(f"{prefix}_II", stats))


def check_r(r: float, statistics: Statistics | str) -> float:
    r = float(r)
    if not r >= 0:
        raise ValueError(f"r must be non-negative, got {r!r}")
    if Statistics(statistics) is Statistics.FERMIONIC and r > FERMIONIC_R_MAX + 1e-15:
        raise ValueError(f"fermionic r must lie in [0, pi/4], got {r!r}")
    return r


def _require(pair: ModePair, statistics: Statistics):
    if pair.statistics is not statistics:
        raise ValueError(f"expected a {statistics.value} mode pair")


def vacuum_tail(r: float, n_max: int) -> float:
    """Squared norm missing from the vacuum expansion cut at ``n_max``: ``xi**(n_max+1)``."""
    return math.tanh(r) ** (2 * (n_max + 1))


def one_particle_tail(r: float, n_max: int) -> float:
    """Missing squared norm of the one-particle expansion when region I is capped at ``n_max``.

    The kept terms are ``n = 0 .. n_max - 1``; the remainder of
    ``(1 - xi)^2 sum (n + 1) xi^n`` is ``xi^N ((N + 1)(1 - xi) + xi)`` with
    ``N = n_max``.
    """
    xi = math.tanh(r) ** 2
    return xi ** n_max * ((n_max + 1) * (1 - xi) + xi)


def bosonic_vacuum(r: float, pair: ModePair, n_max: int) -> StateVector:
    """``sum_n tanh^n r / cosh r |n>_I |n>_II`` for ``n <= n_max``."""
    r = check_r(r, Statistics.BOSONIC)
    _require(pair, Statistics.BOSONIC)
    t, ch = math.tanh(r), math.cosh(r)
    amps = {(n, n): t ** n / ch for n in range(n_max + 1)}
    return StateVector(pair.modes, amps, n_max, vacuum_tail(r, n_max))


def bosonic_one_particle(r: float, pair: ModePair, n_max: int) -> StateVector:
    """``sum_n tanh^n r sqrt(n+1) / cosh^2 r |n+1>_I |n>_II`` with region I capped at ``n_max``."""
    r = check_r(r, Statistics.BOSONIC)
    _require(pair, Statistics.BOSONIC)
    t, ch2 = math.tanh(r), math.cosh(r) ** 2
    amps = {(n + 1, n): t ** n * math.sqrt(n + 1) / ch2 for n in range(n_max)}
    return StateVector(pair.modes, amps, n_max, one_particle_tail(r, n_max))


def fermionic_vacuum(r: float, pair: ModePair) -> StateVector:
    r = check_r(r, Statistics.FERMIONIC)
    _require(pair, Statistics.FERMIONIC)
    return StateVector(pair.modes, {(0, 0): math.cos(r), (1, 1): math.sin(r)}, 1)


def fermionic_one_particle(r: float, pair: ModePair) -> StateVector:
    check_r(r, Statistics.FERMIONIC)
    _require(pair, Statistics.FERMIONIC)
    return StateVector(pair.modes, {(1, 0): 1.0}, 1)


def minkowski_creation(state: StateVector, pair: ModePair, r: float) -> StateVector:
    """Apply the single-mode Minkowski creation operator written in Rindler modes.

    Bosons: ``cosh r b_I^dag - sinh r b_II``. Fermions: ``cos r c_I^dag + sin r c_II``.
    """
    r = check_r(r, pair.statistics)
    up = apply_creation(state, pair.region_I)
    down = apply_annihilation(state, pair.region_II)
    if pair.statistics is Statistics.FERMIONIC:
        return up.scale(math.cos(r)) + down.scale(math.sin(r))
    return up.scale(math.cosh(r)) + down.scale(-math.sinh(r))


def thermal_reduction_bosonic(r: float, n_max: int,
                              mode: ModeLabel | None = None) -> DensityOperator:
    """Diagonal ``(1 - xi) xi^n`` on ``|n>_I``, ``n <= n_max``, with ``xi = tanh^2 r``."""
    r = check_r(r, Statistics.BOSONIC)
    mode = mode or ModeLabel("R_I", Statistics.BOSONIC)
    xi = math.tanh(r) ** 2
    # 1 - xi = 1 / cosh^2 r, which stays accurate as xi -> 1
    diag = np.array([xi ** n for n in range(n_max + 1)]) / math.cosh(r) ** 2
    return DensityOperator((mode,), tuple((n,) for n in range(n_max + 1)), np.diag(diag),
                           vacuum_tail(r, n_max))


def thermal_reduction_fermionic(r: float, mode: ModeLabel | None = None) -> DensityOperator:
    """``diag(cos^2 r, sin^2 r)`` on ``{|0>_I, |1>_I}``."""
    r = check_r(r, Statistics.FERMIONIC)
    mode = mode or ModeLabel("R_I", Statistics.FERMIONIC)
    return DensityOperator((mode,), ((0,), (1,)), np.diag([math.cos(r) ** 2, math.sin(r) ** 2]))
