"""Truncated multi-mode Fock-space linear algebra.

States are sparse maps from occupation tuples to complex amplitudes over an
ordered list of labelled modes. Density operators are dense matrices over an
explicit, ordered basis of occupation tuples (lexicographic unless a caller
supplies its own order).

Ladder operators use real non-negative coefficients and carry no
inter-mode anticommutation signs, for fermions as well as bosons.
"""

from __future__ import annotations

import enum
import itertools
import json
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "Statistics",
    "ModeLabel",
    "TruncationConfig",
    "StateVector",
    "DensityOperator",
    "PSDClampWarning",
    "enumerate_basis",
    "basis_state",
    "apply_creation",
    "apply_annihilation",
    "tensor",
    "density_from_pure",
    "partial_trace",
    "reduce_pure",
    "von_neumann_entropy",
    "entropy_from_eigenvalues",
    "fidelity_pure",
    "dumps",
    "loads",
]

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
EIGEN_FLOOR = 1e-14
SCHEMA = "rindler-teleport/fock"
SCHEMA_VERSION = 1


class Statistics(str, enum.Enum):
    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"


class PSDClampWarning(RuntimeWarning):
    """Eigenvalues in [-1e-10, 0) were clamped to zero before taking logs."""


@dataclass(frozen=True)
class ModeLabel:
    name: str
    statistics: Statistics = Statistics.BOSONIC

    def __post_init__(self):
        object.__setattr__(self, "statistics", Statistics(self.statistics))

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TruncationConfig:
    """Per-bosonic-mode occupation cap and the tail tolerance it was chosen for."""

    n_max: int = 30
    tail_tolerance: float = 1e-10

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise ValueError(f"n_max must be a non-negative integer, got {self.n_max!r}")
        if not self.tail_tolerance > 0:
            raise ValueError("tail_tolerance must be positive")

    @classmethod
    def for_squeezing(cls, r: float, tail_tolerance: float = 1e-10) -> "TruncationConfig":
        """Smallest cap whose vacuum tail ``tanh(r)**(2 (n_max + 1))`` is below tolerance."""
        xi = np.tanh(r) ** 2
        if xi == 0.0:
            return cls(0, tail_tolerance)
        if xi >= 1.0:
            raise ValueError("squeezing too large for a finite truncation")
        n_max = max(0, int(np.ceil(np.log(tail_tolerance) / np.log(xi))) - 1)
        while xi ** (n_max + 1) >= tail_tolerance:
            n_max += 1
        return cls(n_max, tail_tolerance)


def _cap(mode: ModeLabel, n_max: int | None) -> int | None:
    if mode.statistics is Statistics.FERMIONIC:
        return 1
    return n_max


def _check_modes(modes: Sequence[ModeLabel]) -> tuple[ModeLabel, ...]:
    modes = tuple(modes)
    names = [m.name for m in modes]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate mode labels: {names}")
    stats = {m.statistics for m in modes}
    if len(stats) > 1:
        raise ValueError("mixed bosonic/fermionic modes in one state")
    return modes


def _mode_index(modes: Sequence[ModeLabel], mode: ModeLabel | str) -> int:
    name = mode.name if isinstance(mode, ModeLabel) else mode
    for i, m in enumerate(modes):
        if m.name == name:
            if isinstance(mode, ModeLabel) and mode.statistics is not m.statistics:
                raise ValueError(f"mode {name!r} has statistics {m.statistics.value}")
            return i
    raise KeyError(f"unknown mode label {name!r}")


@dataclass(frozen=True)
class StateVector:
    """Sparse ket over ``modes``.

    ``deficit`` accumulates squared norm that was dropped by truncation; it is
    a diagnostic and is never folded back into the amplitudes.
    """

    modes: tuple[ModeLabel, ...]
    amplitudes: Mapping[tuple[int, ...], complex]
    n_max: int | None = None
    deficit: float = 0.0

    def __post_init__(self):
        modes = _check_modes(self.modes)
        object.__setattr__(self, "modes", modes)
        amps = {}
        for key, amp in dict(self.amplitudes).items():
            key = tuple(int(k) for k in key)
            if len(key) != len(modes):
                raise ValueError(f"occupation {key} does not match {len(modes)} modes")
            for occ, mode in zip(key, modes):
                cap = _cap(mode, self.n_max)
                if occ < 0 or (cap is not None and occ > cap):
                    raise ValueError(f"occupation {occ} out of range for mode {mode.name}")
            amp = complex(amp)
            if amp != 0:
                amps[key] = amps.get(key, 0j) + amp
        object.__setattr__(self, "amplitudes", amps)

    @property
    def statistics(self) -> Statistics | None:
        return self.modes[0].statistics if self.modes else None

    @property
    def mode_names(self) -> list[str]:
        return [m.name for m in self.modes]

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values())))

    def normalize(self) -> "StateVector":
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        return self.scale(1.0 / nrm)

    def scale(self, factor: complex) -> "StateVector":
        return StateVector(
            self.modes,
            {k: factor * a for k, a in self.amplitudes.items()},
            self.n_max,
            self.deficit * abs(factor) ** 2,
        )

    def __add__(self, other: "StateVector") -> "StateVector":
        if self.mode_names != other.mode_names:
            raise ValueError("cannot add states over different modes")
        amps = dict(self.amplitudes)
        for k, a in other.amplitudes.items():
            amps[k] = amps.get(k, 0j) + a
        return StateVector(self.modes, amps, _merge_cap(self.n_max, other.n_max),
                           self.deficit + other.deficit)

    def __sub__(self, other: "StateVector") -> "StateVector":
        return self + other.scale(-1.0)

    def __rmul__(self, factor: complex) -> "StateVector":
        return self.scale(factor)

    def __len__(self):
        return len(self.amplitudes)

    def amplitude(self, occupations: Iterable[int]) -> complex:
        return self.amplitudes.get(tuple(occupations), 0j)

    def is_zero(self, atol: float = 0.0) -> bool:
        return all(abs(a) <= atol for a in self.amplitudes.values())

    def vector(self, basis: Sequence[tuple[int, ...]]) -> np.ndarray:
        """Dense amplitude vector over ``basis``; raises if support leaves it."""
        index = {b: i for i, b in enumerate(basis)}
        out = np.zeros(len(basis), dtype=complex)
        for key, amp in self.amplitudes.items():
            if key not in index:
                raise ValueError(f"state component {key} lies outside the basis")
            out[index[key]] = amp
        return out

    def max_abs_difference(self, other: "StateVector") -> float:
        keys = set(self.amplitudes) | set(other.amplitudes)
        return max((abs(self.amplitude(k) - other.amplitude(k)) for k in keys), default=0.0)

    def to_dict(self) -> dict:
        keys = sorted(self.amplitudes)
        return {
            "schema": f"{SCHEMA}/state-vector",
            "version": SCHEMA_VERSION,
            "modes": [{"name": m.name, "statistics": m.statistics.value} for m in self.modes],
            "n_max": self.n_max,
            "basis": [list(k) for k in keys],
            "amplitudes": [[self.amplitudes[k].real, self.amplitudes[k].imag] for k in keys],
            "truncation_deficit": self.deficit,
        }


def _merge_cap(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def basis_state(modes: Sequence[ModeLabel], occupations: Sequence[int],
                n_max: int | None = None, amplitude: complex = 1.0) -> StateVector:
    return StateVector(tuple(modes), {tuple(occupations): amplitude}, n_max)


def enumerate_basis(modes: Sequence[ModeLabel], n_max: int | None = None,
                    max_total: int | None = None) -> list[tuple[int, ...]]:
    """Lexicographic list of occupation tuples, optionally capped in total excitation."""
    ranges = []
    for mode in modes:
        cap = _cap(mode, n_max)
        if cap is None:
            if max_total is None:
                raise ValueError("bosonic enumeration needs n_max or max_total")
            cap = max_total
        ranges.append(range(cap + 1))
    basis = list(itertools.product(*ranges))
    if max_total is not None:
        basis = [b for b in basis if sum(b) <= max_total]
    return basis


def _ladder(state: StateVector, mode: ModeLabel | str, create: bool) -> StateVector:
    idx = _mode_index(state.modes, mode)
    target = state.modes[idx]
    cap = _cap(target, state.n_max)
    out: dict[tuple[int, ...], complex] = {}
    dropped = 0.0
    for key, amp in state.amplitudes.items():
        n = key[idx]
        if create:
            if target.statistics is Statistics.FERMIONIC:
                if n == 1:
                    continue
                coeff, new = 1.0, 1
            else:
                coeff, new = np.sqrt(n + 1.0), n + 1
            if cap is not None and new > cap:
                dropped += abs(coeff * amp) ** 2
                continue
        else:
            if n == 0:
                continue
            coeff = 1.0 if target.statistics is Statistics.FERMIONIC else np.sqrt(float(n))
            new = n - 1
        new_key = key[:idx] + (new,) + key[idx + 1:]
        out[new_key] = out.get(new_key, 0j) + coeff * amp
    return StateVector(state.modes, out, state.n_max, state.deficit + dropped)


def apply_creation(state: StateVector, mode: ModeLabel | str) -> StateVector:
    """Raise the occupation of ``mode``; bosonic overflow past ``n_max`` goes to the deficit."""
    return _ladder(state, mode, create=True)


def apply_annihilation(state: StateVector, mode: ModeLabel | str) -> StateVector:
    return _ladder(state, mode, create=False)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    overlap = set(a.mode_names) & set(b.mode_names)
    if overlap:
        raise ValueError(f"overlapping mode labels: {sorted(overlap)}")
    amps = {ka + kb: va * vb for ka, va in a.amplitudes.items() for kb, vb in b.amplitudes.items()}
    na, nb = a.norm() ** 2, b.norm() ** 2
    deficit = a.deficit * (nb + b.deficit) + b.deficit * na
    return StateVector(a.modes + b.modes, amps, _merge_cap(a.n_max, b.n_max), deficit)


@dataclass(frozen=True)
class DensityOperator:
    """Dense density matrix over an explicit basis of occupation tuples."""

    modes: tuple[ModeLabel, ...]
    basis: tuple[tuple[int, ...], ...]
    matrix: np.ndarray = field(repr=False)
    deficit: float = 0.0

    def __post_init__(self):
        modes = _check_modes(self.modes)
        basis = tuple(tuple(int(x) for x in b) for b in self.basis)
        mat = np.array(self.matrix, dtype=complex)
        if mat.shape != (len(basis), len(basis)):
            raise ValueError(f"matrix shape {mat.shape} does not match basis size {len(basis)}")
        if len(set(basis)) != len(basis):
            raise ValueError("basis contains duplicates")
        if any(len(b) != len(modes) for b in basis):
            raise ValueError("basis tuples must match the number of modes")
        mat.setflags(write=False)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "matrix", mat)

    @property
    def mode_names(self) -> list[str]:
        return [m.name for m in self.modes]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def hermiticity_error(self) -> float:
        if self.dim == 0:
            return 0.0
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def is_hermitian(self, atol: float = HERMITIAN_TOL) -> bool:
        return self.hermiticity_error() <= atol

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def index(self, occupations: Iterable[int]) -> int:
        return self.basis.index(tuple(occupations))

    def element(self, ket: Iterable[int], bra: Iterable[int]) -> complex:
        return complex(self.matrix[self.index(ket), self.index(bra)])

    def restrict(self, basis: Sequence[tuple[int, ...]]) -> "DensityOperator":
        """Submatrix over ``basis`` (a subset of this operator's basis, any order)."""
        lookup = {b: i for i, b in enumerate(self.basis)}
        try:
            idx = [lookup[tuple(b)] for b in basis]
        except KeyError as exc:
            raise ValueError(f"basis state {exc.args[0]} not present") from None
        sub = self.matrix[np.ix_(idx, idx)]
        return DensityOperator(self.modes, tuple(basis), sub, self.deficit)

    def conjugate_by(self, unitary: np.ndarray) -> "DensityOperator":
        u = np.asarray(unitary, dtype=complex)
        return DensityOperator(self.modes, self.basis, u @ self.matrix @ u.conj().T, self.deficit)

    def to_dict(self) -> dict:
        return {
            "schema": f"{SCHEMA}/density-operator",
            "version": SCHEMA_VERSION,
            "modes": [{"name": m.name, "statistics": m.statistics.value} for m in self.modes],
            "basis": [list(b) for b in self.basis],
            "matrix": [[[z.real, z.imag] for z in row] for row in self.matrix.tolist()],
            "trace": self.trace(),
            "truncation_deficit": self.deficit,
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "DensityOperator":
        kind = doc.get("schema")
        if kind != f"{SCHEMA}/density-operator":
            raise ValueError(f"not a density-operator document: {kind!r}")
        if doc.get("version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {doc.get('version')!r}")
        modes = tuple(ModeLabel(m["name"], Statistics(m["statistics"])) for m in doc["modes"])
        basis = tuple(tuple(b) for b in doc["basis"])
        mat = np.array([[complex(re, im) for re, im in row] for row in doc["matrix"]],
                       dtype=complex).reshape(len(basis), len(basis))
        return cls(modes, basis, mat, float(doc.get("truncation_deficit", 0.0)))


def density_from_pure(state: StateVector,
                      basis: Sequence[tuple[int, ...]] | None = None) -> DensityOperator:
    """``|psi><psi|`` over ``basis`` (default: the full lexicographic truncated basis)."""
    if basis is None:
        if state.n_max is None and state.statistics is Statistics.BOSONIC:
            basis = sorted(state.amplitudes)
        else:
            basis = enumerate_basis(state.modes, state.n_max)
    vec = state.vector(basis)
    return DensityOperator(state.modes, tuple(basis), np.outer(vec, vec.conj()), state.deficit)


def _split(modes: Sequence[ModeLabel], keep: Sequence[ModeLabel | str]):
    if not keep:
        raise ValueError("keep list must not be empty")
    keep_idx = [_mode_index(modes, k) for k in keep]
    if len(set(keep_idx)) != len(keep_idx):
        raise ValueError("keep list contains duplicates")
    drop_idx = [i for i in range(len(modes)) if i not in keep_idx]
    return keep_idx, drop_idx


def partial_trace(rho: DensityOperator, keep: Sequence[ModeLabel | str]) -> DensityOperator:
    """Trace out every mode not in ``keep``; kept modes appear in ``keep`` order."""
    keep_idx, drop_idx = _split(rho.modes, keep)
    kept_keys = [tuple(b[i] for i in keep_idx) for b in rho.basis]
    traced_keys = [tuple(b[i] for i in drop_idx) for b in rho.basis]
    new_basis = sorted(set(kept_keys))
    pos = {k: i for i, k in enumerate(new_basis)}
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, t in enumerate(traced_keys):
        groups.setdefault(t, []).append(i)
    out = np.zeros((len(new_basis), len(new_basis)), dtype=complex)
    for rows in groups.values():
        target = [pos[kept_keys[i]] for i in rows]
        out[np.ix_(target, target)] += rho.matrix[np.ix_(rows, rows)]
    modes = tuple(rho.modes[i] for i in keep_idx)
    return DensityOperator(modes, tuple(new_basis), out, rho.deficit)


def reduce_pure(state: StateVector, keep: Sequence[ModeLabel | str],
                basis: Sequence[tuple[int, ...]] | None = None) -> DensityOperator:
    """``partial_trace(density_from_pure(state), keep)`` without the full outer product.

    Only amplitudes sharing a traced-out occupation pattern interfere, so the
    reduced matrix is accumulated group by group from the sparse amplitudes.
    """
    keep_idx, drop_idx = _split(state.modes, keep)
    modes = tuple(state.modes[i] for i in keep_idx)
    if basis is None:
        if state.n_max is None and state.statistics is Statistics.BOSONIC:
            basis = sorted({tuple(k[i] for i in keep_idx) for k in state.amplitudes})
        else:
            basis = enumerate_basis(modes, state.n_max)
    pos = {tuple(b): i for i, b in enumerate(basis)}
    groups: dict[tuple[int, ...], list[tuple[int, complex]]] = {}
    for key, amp in state.amplitudes.items():
        kept = tuple(key[i] for i in keep_idx)
        if kept not in pos:
            raise ValueError(f"kept occupation {kept} lies outside the basis")
        groups.setdefault(tuple(key[i] for i in drop_idx), []).append((pos[kept], amp))
    out = np.zeros((len(basis), len(basis)), dtype=complex)
    for members in groups.values():
        idx = np.array([m[0] for m in members])
        vec = np.array([m[1] for m in members])
        out[np.ix_(idx, idx)] += np.outer(vec, vec.conj())
    return DensityOperator(modes, tuple(tuple(b) for b in basis), out, state.deficit)


def entropy_from_eigenvalues(eigenvalues: np.ndarray, *, return_clamped: bool = False):
    """Shannon entropy in bits of a spectrum, clamping tiny negative values."""
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.size and lam.min() < -PSD_TOL:
        raise ValueError(f"eigenvalue {lam.min():.3e} below -{PSD_TOL:g}: not a valid state")
    clamped = int(np.count_nonzero(lam < 0))
    # values above -EIGEN_FLOOR are rounding noise on exact zeros
    if np.any(lam < -EIGEN_FLOOR):
        warnings.warn(f"clamped {clamped} slightly negative eigenvalue(s) to zero",
                      PSDClampWarning, stacklevel=2)
    lam = lam[lam > EIGEN_FLOOR]
    s = float(max(0.0, -np.sum(lam * np.log2(lam))))
    return (s, clamped) if return_clamped else s


def von_neumann_entropy(rho: DensityOperator, *, return_clamped: bool = False):
    """Entropy in bits, ``-sum(l * log2(l))`` over eigenvalues above 1e-14."""
    return entropy_from_eigenvalues(rho.eigenvalues(), return_clamped=return_clamped)


def fidelity_pure(psi: StateVector, rho: DensityOperator) -> float:
    """``<psi| rho |psi>`` for a normalized ket expressed in ``rho``'s basis."""
    if psi.mode_names != rho.mode_names:
        raise ValueError(f"basis mismatch: {psi.mode_names} vs {rho.mode_names}")
    vec = psi.vector(rho.basis)
    return float(np.vdot(vec, rho.matrix @ vec).real)


def dumps(obj: StateVector | DensityOperator, **kwargs) -> str:
    return json.dumps(obj.to_dict(), **kwargs)


def loads(text: str) -> StateVector | DensityOperator:
    doc = json.loads(text)
    kind = doc.get("schema", "")
    if kind.endswith("/density-operator"):
        return DensityOperator.from_dict(doc)
    if kind.endswith("/state-vector"):
        if doc.get("version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {doc.get('version')!r}")
        modes = tuple(ModeLabel(m["name"], Statistics(m["statistics"])) for m in doc["modes"])
        amps = {tuple(b): complex(re, im) for b, (re, im) in zip(doc["basis"], doc["amplitudes"])}
        return StateVector(modes, amps, doc.get("n_max"), float(doc.get("truncation_deficit", 0.0)))
    raise ValueError(f"unrecognised document schema {kind!r}")
