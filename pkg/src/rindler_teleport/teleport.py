"""Dual-rail teleportation from an inertial sender to an accelerated receiver.

Logical basis states are single excitations shared between two modes,
``|0_L> = |1, 0>`` and ``|1_L> = |0, 1>``. The receiver's two cavity modes
are ``R1`` and ``R2``; each splits into a region I / region II Rindler pair,
and the receiver only sees region I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .fock import (
    DensityOperator,
    ModeLabel,
    StateVector,
    Statistics,
    enumerate_basis,
    fidelity_pure,
    reduce_pure,
    tensor,
)
from .vacuum import (
    ModePair,
    bosonic_one_particle,
    bosonic_vacuum,
    check_r,
    fermionic_one_particle,
    fermionic_vacuum,
)

__all__ = [
    "LogicalQubit",
    "BellOutcome",
    "ALL_OUTCOMES",
    "ConditionalAmplitudes",
    "DualRailEncoding",
    "FidelityResult",
    "conditional_amplitudes",
    "logical_bell_measurement",
    "bell_resource",
    "region_I_modes",
    "sector_basis",
    "bosonic_sector_block",
    "sector_block",
    "sector_tail",
    "rob_state_bosonic_closed",
    "rob_state_bosonic_bruteforce",
    "rob_state_fermionic",
    "rob_state_fermionic_bruteforce",
    "rob_state",
    "apply_correction",
    "target_state",
    "fidelity_closed_form",
    "teleport_fidelity",
    "teleport_fidelity_report",
    "sector_weights",
]

NORM_TOL = 1e-12


def _check_unit(a: complex, b: complex, what: str):
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORM_TOL:
        raise ValueError(f"{what} amplitudes must satisfy |a|^2 + |b|^2 = 1")


@dataclass(frozen=True)
class LogicalQubit:
    """``alpha |0_L> + beta |1_L>``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        _check_unit(self.alpha, self.beta, "qubit")

    @classmethod
    def plus(cls) -> "LogicalQubit":
        return cls(1 / math.sqrt(2), 1 / math.sqrt(2))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "LogicalQubit":
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        z /= np.linalg.norm(z)
        return cls(z[0], z[1])

    @classmethod
    def from_unnormalized(cls, alpha: complex, beta: complex) -> "LogicalQubit":
        nrm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        if nrm == 0:
            raise ValueError("alpha and beta cannot both vanish")
        return cls(alpha / nrm, beta / nrm)


@dataclass(frozen=True)
class BellOutcome:
    i: int
    j: int

    def __post_init__(self):
        if self.i not in (0, 1) or self.j not in (0, 1):
            raise ValueError(f"outcome bits must be 0 or 1, got ({self.i}, {self.j})")

    @classmethod
    def parse(cls, text: str | Sequence[int] | "BellOutcome") -> "BellOutcome":
        if isinstance(text, BellOutcome):
            return text
        if isinstance(text, str):
            text = text.strip()
            if len(text) != 2 or not set(text) <= {"0", "1"}:
                raise ValueError(f"outcome must look like '01', got {text!r}")
            return cls(int(text[0]), int(text[1]))
        i, j = text
        return cls(int(i), int(j))

    def __str__(self):
        return f"{self.i}{self.j}"


ALL_OUTCOMES = tuple(BellOutcome(i, j) for i in (0, 1) for j in (0, 1))


@dataclass(frozen=True)
class ConditionalAmplitudes:
    """Receiver's logical amplitudes ``x |0_L> + y |1_L>`` after an outcome."""

    x: complex
    y: complex

    def __post_init__(self):
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))
        _check_unit(self.x, self.y, "conditional")


def conditional_amplitudes(psi: LogicalQubit, outcome: BellOutcome) -> ConditionalAmplitudes:
    a, b = psi.alpha, psi.beta
    table = {
        (0, 0): (a, b),
        (0, 1): (b, a),
        (1, 0): (a, -b),
        (1, 1): (-b, a),
    }
    return ConditionalAmplitudes(*table[(outcome.i, outcome.j)])


_H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
_I2 = np.eye(2)
_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def logical_bell_measurement(psi: LogicalQubit) -> dict[BellOutcome, tuple[float, ConditionalAmplitudes]]:
    """Simulate CNOT, Hadamard and a computational-basis readout on three logical qubits.

    Qubit order is (client, sender's half, receiver's half). Returns the
    probability of each outcome and the normalized receiver state it leaves.
    """
    client = np.array([psi.alpha, psi.beta])
    bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
    state = np.kron(client, bell)
    state = np.kron(_CNOT, _I2) @ state
    state = np.kron(np.kron(_H, _I2), _I2) @ state
    state = state.reshape(2, 2, 2)
    out = {}
    for outcome in ALL_OUTCOMES:
        rob = state[outcome.i, outcome.j]
        prob = float(np.vdot(rob, rob).real)
        rob = rob / math.sqrt(prob)
        out[outcome] = (prob, ConditionalAmplitudes(rob[0], rob[1]))
    return out


@dataclass(frozen=True)
class DualRailEncoding:
    mode_1: ModeLabel
    mode_2: ModeLabel

    def __post_init__(self):
        if self.mode_1.name == self.mode_2.name:
            raise ValueError("dual-rail modes must be distinct")
        if self.mode_1.statistics is not self.mode_2.statistics:
            raise ValueError("dual-rail modes must share statistics")

    @property
    def modes(self) -> tuple[ModeLabel, ModeLabel]:
        return self.mode_1, self.mode_2

    @property
    def statistics(self) -> Statistics:
        return self.mode_1.statistics

    @classmethod
    def named(cls, party: str, statistics: Statistics | str = Statistics.BOSONIC,
              suffix: str = "") -> "DualRailEncoding":
        stats = Statistics(statistics)
        return cls(ModeLabel(f"{party}1{suffix}", stats), ModeLabel(f"{party}2{suffix}", stats))

    def encode(self, x: complex, y: complex) -> StateVector:
        return StateVector(self.modes, {(1, 0): x, (0, 1): y}, 1)


def bell_resource(alice: DualRailEncoding, rob: DualRailEncoding) -> StateVector:
    """``(|0_L>|0_L> + |1_L>|1_L>) / sqrt(2)`` over modes (A1, A2, R1, R2)."""
    names = [m.name for m in alice.modes + rob.modes]
    if len(set(names)) != 4:
        raise ValueError(f"mode label collision in {names}")
    if alice.statistics is not rob.statistics:
        raise ValueError("both parties must use the same statistics")
    s = 1 / math.sqrt(2)
    return StateVector(alice.modes + rob.modes, {(1, 0, 1, 0): s, (0, 1, 0, 1): s}, 1)


def region_I_modes(statistics: Statistics | str = Statistics.BOSONIC) -> tuple[ModeLabel, ModeLabel]:
    stats = Statistics(statistics)
    return ModeLabel("R1_I", stats), ModeLabel("R2_I", stats)


def _pairs(statistics: Statistics) -> tuple[ModePair, ModePair]:
    return ModePair.named("R1", statistics), ModePair.named("R2", statistics)


def sector_basis(n_max: int) -> list[tuple[int, int]]:
    """Two-mode basis ordered by total excitation, lexicographic inside each sector."""
    return [(m, n - m) for n in range(n_max + 1) for m in range(n + 1)]


def bosonic_sector_block(amps: ConditionalAmplitudes, n: int, scale: float = 1.0) -> np.ndarray:
    """The ``n``-excitation block of the receiver's state, divided by ``xi^(n-1) / cosh^6 r``.

    Rows and columns run over ``|m, n - m>`` for ``m = 0 .. n`` (``m`` counts
    R1 quanta). Pass ``scale`` to restore the r-dependent prefactor.
    """
    return scale * sector_block(n, abs(amps.x) ** 2, abs(amps.y) ** 2, amps.x * np.conj(amps.y))


def sector_block(n: int, px: float, py: float, coherence: complex) -> np.ndarray:
    """Unit sector block from populations ``|x|^2``, ``|y|^2`` and coherence ``x y*``."""
    m = np.arange(n + 1)
    block = np.diag((m * px + (n - m) * py).astype(complex))
    if n >= 1:
        k = np.arange(n)
        coh = coherence * np.sqrt((k + 1.0) * (n - k))
        block[k + 1, k] = coh
        block[k, k + 1] = np.conj(coh)
    return block


def _sector_scale(xi: float, cosh6: float, n: int) -> float:
    if n == 0:
        return 0.0
    return xi ** (n - 1) / cosh6


def sector_tail(r: float, n_max: int) -> float:
    """Trace carried by sectors ``n > n_max`` of the bosonic receiver state.

    Closed form of ``(1 - xi)^3 sum_{n > N} n (n + 1) / 2 xi^(n - 1)``.
    """
    xi = math.tanh(r) ** 2
    a = n_max + 1
    return (xi ** n_max / 2) * (xi * (1 + xi) + (2 * a + 1) * xi * (1 - xi)
                                + a * (a + 1) * (1 - xi) ** 2)


def rob_state_bosonic_closed(amps: ConditionalAmplitudes, r: float, n_max: int) -> DensityOperator:
    """Receiver's region-I state assembled sector by sector up to ``n_max`` total excitations."""
    r = check_r(r, Statistics.BOSONIC)
    xi, cosh6 = math.tanh(r) ** 2, math.cosh(r) ** 6
    basis = sector_basis(n_max)
    mat = np.zeros((len(basis), len(basis)), dtype=complex)
    start = 0
    for n in range(n_max + 1):
        size = n + 1
        mat[start:start + size, start:start + size] = bosonic_sector_block(
            amps, n, _sector_scale(xi, cosh6, n))
        start += size
    return DensityOperator(region_I_modes(), tuple(basis), mat, sector_tail(r, n_max))


def _dual_rail_rindler(amps: ConditionalAmplitudes, statistics: Statistics, r: float,
                       n_max: int) -> StateVector:
    p1, p2 = _pairs(statistics)
    if statistics is Statistics.BOSONIC:
        one1, vac1 = bosonic_one_particle(r, p1, n_max), bosonic_vacuum(r, p1, n_max)
        one2, vac2 = bosonic_one_particle(r, p2, n_max), bosonic_vacuum(r, p2, n_max)
    else:
        one1, vac1 = fermionic_one_particle(r, p1), fermionic_vacuum(r, p1)
        one2, vac2 = fermionic_one_particle(r, p2), fermionic_vacuum(r, p2)
    # modes: R1_I, R1_II, R2_I, R2_II
    return tensor(one1, vac2).scale(amps.x) + tensor(vac1, one2).scale(amps.y)


def rob_state_bosonic_bruteforce(amps: ConditionalAmplitudes, r: float, n_max: int) -> DensityOperator:
    """Expand both cavity modes over Rindler pairs, then trace out region II.

    ``n_max`` caps every Rindler mode; the result spans the full
    lexicographic ``(n_max + 1)^2`` region-I basis.
    """
    r = check_r(r, Statistics.BOSONIC)
    state = _dual_rail_rindler(amps, Statistics.BOSONIC, r, n_max)
    modes = region_I_modes()
    return reduce_pure(state, modes, enumerate_basis(modes, n_max))


def rob_state_fermionic(amps: ConditionalAmplitudes, r: float) -> DensityOperator:
    """``cos^2 r |phi><phi| + sin^2 r |11><11|`` on the lexicographic two-fermion basis."""
    r = check_r(r, Statistics.FERMIONIC)
    modes = region_I_modes(Statistics.FERMIONIC)
    basis = enumerate_basis(modes)
    phi = np.zeros(4, dtype=complex)
    phi[basis.index((1, 0))] = amps.x
    phi[basis.index((0, 1))] = amps.y
    mat = math.cos(r) ** 2 * np.outer(phi, phi.conj())
    mat[3, 3] += math.sin(r) ** 2
    return DensityOperator(modes, tuple(basis), mat)


def rob_state_fermionic_bruteforce(amps: ConditionalAmplitudes, r: float) -> DensityOperator:
    r = check_r(r, Statistics.FERMIONIC)
    state = _dual_rail_rindler(amps, Statistics.FERMIONIC, r, 1)
    modes = region_I_modes(Statistics.FERMIONIC)
    return reduce_pure(state, modes, enumerate_basis(modes))


def rob_state(statistics: Statistics | str, amps: ConditionalAmplitudes, r: float,
              n_max: int = 30, method: str = "closed") -> DensityOperator:
    stats = Statistics(statistics)
    if method not in ("closed", "bruteforce"):
        raise ValueError(f"unknown method {method!r}")
    if stats is Statistics.FERMIONIC:
        if method == "closed":
            return rob_state_fermionic(amps, r)
        return rob_state_fermionic_bruteforce(amps, r)
    if method == "closed":
        return rob_state_bosonic_closed(amps, r, n_max)
    return rob_state_bosonic_bruteforce(amps, r, n_max)


def _logical_indices(rho: DensityOperator) -> tuple[int, int]:
    try:
        return rho.index((1, 0)), rho.index((0, 1))
    except ValueError:
        raise ValueError("density operator lacks the one-excitation sector") from None


def apply_correction(rho: DensityOperator, outcome: BellOutcome) -> DensityOperator:
    """Apply ``Z^i X^j`` inside ``span{|1,0>, |0,1>}``, identity elsewhere."""
    i0, i1 = _logical_indices(rho)
    x = np.array([[0, 1], [1, 0]]) if outcome.j else np.eye(2)
    z = np.diag([1, -1]) if outcome.i else np.eye(2)
    u = z @ x
    idx = [i0, i1]
    # U is the identity off the logical pair, so only those rows and columns change
    mat = np.array(rho.matrix)
    mat[idx, :] = u @ mat[idx, :]
    mat[:, idx] = mat[:, idx] @ u.conj().T
    return DensityOperator(rho.modes, rho.basis, mat, rho.deficit)


def target_state(psi: LogicalQubit, modes: Sequence[ModeLabel] | None = None) -> StateVector:
    """Region-I image of the input qubit, ``alpha |1,0> + beta |0,1>``."""
    modes = tuple(modes) if modes is not None else region_I_modes()
    return StateVector(modes, {(1, 0): psi.alpha, (0, 1): psi.beta}, 1)


def fidelity_closed_form(statistics: Statistics | str, r: float) -> float:
    stats = Statistics(statistics)
    r = check_r(r, stats)
    if stats is Statistics.FERMIONIC:
        return math.cos(r) ** 2
    return 1.0 / math.cosh(r) ** 6


class FidelityResult(NamedTuple):
    raw: float
    corrected: float
    closed_form: float
    deficit: float


def teleport_fidelity_report(statistics: Statistics | str, r: float, psi: LogicalQubit,
                             n_max: int = 30, outcome: BellOutcome | None = None,
                             method: str = "bruteforce") -> FidelityResult:
    """Run the protocol for one outcome and compare with the closed form.

    The conditional amplitudes come from the simulated logical measurement,
    not from the lookup table. The target lies entirely in the
    one-excitation sector, which any ``n_max >= 1`` keeps whole, so the tail
    correction to the raw overlap is exactly zero; ``deficit`` still reports
    the trace lost to truncation.
    """
    stats = Statistics(statistics)
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    outcome = outcome or BellOutcome(0, 0)
    _, amps = logical_bell_measurement(psi)[outcome]
    rho = apply_correction(rob_state(stats, amps, r, n_max, method), outcome)
    raw = fidelity_pure(target_state(psi, rho.modes), rho)
    return FidelityResult(raw, raw, fidelity_closed_form(stats, r), rho.deficit)


def teleport_fidelity(statistics: Statistics | str, r: float, psi: LogicalQubit,
                      n_max: int = 30, outcome: BellOutcome | None = None,
                      method: str = "bruteforce") -> float:
    return teleport_fidelity_report(statistics, r, psi, n_max, outcome, method).corrected


def sector_weights(rho: DensityOperator, postselect: bool = False) -> list[tuple[int, float]]:
    """Trace of each fixed-total-excitation block, sorted by ``n``.

    With ``postselect=True`` only the one-excitation entry is returned: the
    probability that a non-absorbing check finds no extra quanta.
    """
    diag = np.real(np.diag(rho.matrix))
    weights: dict[int, float] = {}
    for occ, w in zip(rho.basis, diag):
        n = sum(occ)
        weights[n] = weights.get(n, 0.0) + float(w)
    items = sorted(weights.items())
    if postselect:
        return [(n, w) for n, w in items if n == 1]
    return items

