"""Receiver entropies before and after learning the Bell outcome."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .fock import DensityOperator, Statistics, entropy_from_eigenvalues, von_neumann_entropy
from .teleport import (
    ALL_OUTCOMES,
    BellOutcome,
    ConditionalAmplitudes,
    LogicalQubit,
    conditional_amplitudes,
    rob_state,
    sector_basis,
    sector_block,
    sector_tail,
)
from .vacuum import check_r

__all__ = [
    "SpectrumFormula",
    "Spectrum",
    "pre_measurement_state",
    "post_measurement_state",
    "spectrum_closed_form",
    "sectors_for_tail",
    "info_gain",
    "info_gain_closed_form",
    "five_state_model",
    "entropy_sweep",
]

KINDS = ("pre", "post", "vacuum")


def _xi(r: float) -> float:
    return math.tanh(r) ** 2


@dataclass(frozen=True)
class SpectrumFormula:
    """Closed-form eigenvalue ``p(n, m; r)`` for one state family."""

    kind: str
    statistics: Statistics = Statistics.BOSONIC

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        object.__setattr__(self, "statistics", Statistics(self.statistics))

    def __call__(self, n, m, r: float):
        n = np.asarray(n, dtype=float)
        m = np.asarray(m, dtype=float)
        if self.statistics is Statistics.FERMIONIC:
            return self._fermionic(n, m, r)
        xi = _xi(r)
        cosh2 = math.cosh(r) ** 2
        if self.kind == "vacuum":
            return xi ** n / cosh2 ** 2
        # xi^(n-1) with the n = 0 entry forced to zero
        safe = np.where(n >= 1, n - 1, 0)
        weight = np.where(n >= 1, xi ** safe / cosh2 ** 3, 0.0)
        if self.kind == "pre":
            return n / 2 * weight
        return m * weight

    def _fermionic(self, n, m, r):
        c2, s2 = math.cos(r) ** 2, math.sin(r) ** 2
        if self.kind == "vacuum":
            return c2 ** (2 - n) * s2 ** n
        if self.kind == "pre":
            return np.select([n == 1, n == 2], [c2 / 2, s2], 0.0)
        return np.select([(n == 1) & (m == 1), n == 2], [c2, s2], 0.0)


class Spectrum(NamedTuple):
    n: np.ndarray
    m: np.ndarray
    p: np.ndarray


def _labels(statistics: Statistics, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    if statistics is Statistics.FERMIONIC:
        pairs = [(0, 0), (1, 0), (1, 1), (2, 1)]
    else:
        pairs = [(n, m) for n in range(n_max + 1) for m in range(n + 1)]
    arr = np.array(pairs, dtype=int)
    return arr[:, 0], arr[:, 1]


def spectrum_closed_form(kind: str, statistics: Statistics | str, r: float,
                         n_max: int = 30) -> Spectrum:
    """Eigenvalues labelled by sector ``n`` and index ``m = 0..n``.

    For fermions the labels are fixed by Pauli exclusion and ``n_max`` is
    ignored.
    """
    stats = Statistics(statistics)
    r = check_r(r, stats)
    n, m = _labels(stats, n_max)
    return Spectrum(n, m, np.asarray(SpectrumFormula(kind, stats)(n, m, r), dtype=float))


def _default_psi(psi: LogicalQubit | None) -> LogicalQubit:
    return psi if psi is not None else LogicalQubit.plus()


def pre_measurement_state(statistics: Statistics | str, r: float,
                          psi: LogicalQubit | None = None, n_max: int = 30) -> DensityOperator:
    """Receiver state averaged over the four equally likely outcomes."""
    psi = _default_psi(psi)
    states = [rob_state(statistics, conditional_amplitudes(psi, o), r, n_max) for o in ALL_OUTCOMES]
    mat = sum(s.matrix for s in states) / len(states)
    first = states[0]
    return DensityOperator(first.modes, first.basis, mat, first.deficit)


def post_measurement_state(statistics: Statistics | str, r: float, n_max: int = 30,
                           outcome: BellOutcome | None = None,
                           psi: LogicalQubit | None = None) -> DensityOperator:
    """Receiver state for one known outcome (unit trace for fermions as well)."""
    psi = _default_psi(psi)
    outcome = outcome or BellOutcome(0, 0)
    return rob_state(statistics, conditional_amplitudes(psi, outcome), r, n_max)


def sectors_for_tail(r: float, tail_tolerance: float = 1e-8) -> int:
    """Smallest sector cap whose bosonic trace tail is below ``tail_tolerance``."""
    n = 1
    while sector_tail(r, n) >= tail_tolerance:
        n = n * 2 if sector_tail(r, 2 * n) >= tail_tolerance else n + 1
    return n


@lru_cache(maxsize=8192)
def _unit_block_spectrum(n: int, px: float, py: float, coherence: complex) -> tuple[float, ...]:
    block = sector_block(n, px, py, coherence)
    d = np.real(np.diag(block))
    e = np.abs(np.diag(block, -1))
    if n == 0 or not e.any():
        return tuple(np.sort(d))
    # a Hermitian tridiagonal matrix is diagonally similar to the real one with |offdiag|
    return tuple(eigvalsh_tridiagonal(d, e, lapack_driver="sterf"))


def _bosonic_entropy_numeric(amps_list: list[ConditionalAmplitudes], r: float,
                             n_sectors: int) -> float:
    """Entropy of the outcome-averaged receiver state, diagonalized per sector."""
    xi, cosh6 = _xi(r), math.cosh(r) ** 6
    k = len(amps_list)
    px = sum(abs(a.x) ** 2 for a in amps_list) / k
    py = sum(abs(a.y) ** 2 for a in amps_list) / k
    coh = complex(sum(a.x * np.conj(a.y) for a in amps_list) / k)
    total = 0.0
    for n in range(1, n_sectors + 1):
        scale = xi ** (n - 1) / cosh6
        if scale == 0.0:
            continue
        unit = np.asarray(_unit_block_spectrum(n, px, py, coh))
        lam = scale * unit
        lam = lam[lam > 1e-14 * scale * max(1.0, n)]
        total -= float(np.sum(lam * np.log2(lam)))
    return total


def info_gain(statistics: Statistics | str, r: float, n_max: int | None = None,
              method: str = "numeric", tail_tolerance: float = 1e-8,
              psi: LogicalQubit | None = None) -> float:
    """``S(pre) - S(post)`` in bits.

    ``method="numeric"`` diagonalizes the receiver's states sector by sector;
    each bosonic sector block equals an r-independent matrix times
    ``xi^(n-1) / cosh^6 r``, so the unit block is diagonalized once and
    cached across calls. ``method="closed"`` sums the closed-form spectra.
    ``n_max`` is the sector cap; by default it is chosen so the trace tail
    is below ``tail_tolerance``.
    """
    stats = Statistics(statistics)
    r = check_r(r, stats)
    psi = _default_psi(psi)
    if method not in ("numeric", "closed"):
        raise ValueError(f"unknown method {method!r}")
    if stats is Statistics.FERMIONIC:
        if method == "closed":
            return info_gain_closed_form(stats, r)
        pre = pre_measurement_state(stats, r, psi)
        post = post_measurement_state(stats, r, psi=psi)
        return von_neumann_entropy(pre) - von_neumann_entropy(post)
    if n_max is None:
        n_max = sectors_for_tail(r, tail_tolerance)
    if method == "closed":
        pre = spectrum_closed_form("pre", stats, r, n_max).p
        post = spectrum_closed_form("post", stats, r, n_max).p
        return entropy_from_eigenvalues(pre) - entropy_from_eigenvalues(post)
    all_amps = [conditional_amplitudes(psi, o) for o in ALL_OUTCOMES]
    s_pre = _bosonic_entropy_numeric(all_amps, r, n_max)
    s_post = _bosonic_entropy_numeric(all_amps[:1], r, n_max)
    return s_pre - s_post


def info_gain_closed_form(statistics: Statistics | str, r: float) -> float:
    """Fermionic ``cos^2 r``; bosonic values have no finite closed form and raise."""
    stats = Statistics(statistics)
    r = check_r(r, stats)
    if stats is Statistics.FERMIONIC:
        return math.cos(r) ** 2
    raise ValueError("bosonic information gain has no finite closed form; use info_gain")


def _five_state(rho: DensityOperator) -> DensityOperator:
    sub = rho.restrict([b for b in sector_basis(2) if sum(b) in (1, 2)])
    tr = sub.trace()
    return DensityOperator(sub.modes, sub.basis, sub.matrix / tr)


def five_state_model(r: float) -> float:
    """Information gain of the renormalized one- and two-excitation truncation (bosonic)."""
    r = check_r(r, Statistics.BOSONIC)
    pre = _five_state(pre_measurement_state(Statistics.BOSONIC, r, n_max=2))
    post = _five_state(post_measurement_state(Statistics.BOSONIC, r, n_max=2))
    return von_neumann_entropy(pre) - von_neumann_entropy(post)


class EntropyRow(NamedTuple):
    r: float
    full: float
    five_state: float | None
    n_sectors: int
    tail: float


def entropy_sweep(statistics: Statistics | str, r_values, method: str = "numeric",
                  tail_tolerance: float = 1e-8, n_max: int | None = None) -> list[EntropyRow]:
    stats = Statistics(statistics)
    rows = []
    for r in r_values:
        r = float(r)
        if stats is Statistics.BOSONIC:
            n = n_max if n_max is not None else sectors_for_tail(r, tail_tolerance)
            full = info_gain(stats, r, n, method=method)
            rows.append(EntropyRow(r, full, five_state_model(r), n, sector_tail(r, n)))
        else:
            rows.append(EntropyRow(r, info_gain(stats, r, method=method), None, 2, 0.0))
    return rows
