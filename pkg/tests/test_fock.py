import json
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from oracles import destroy, entropy_bits, ptrace_dense
from rindler_teleport.fock import (
    DensityOperator,
    ModeLabel,
    PSDClampWarning,
    StateVector,
    Statistics,
    TruncationConfig,
    apply_annihilation,
    apply_creation,
    basis_state,
    density_from_pure,
    dumps,
    entropy_from_eigenvalues,
    enumerate_basis,
    fidelity_pure,
    loads,
    partial_trace,
    reduce_pure,
    tensor,
    von_neumann_entropy,
)

A = ModeLabel("a")
B = ModeLabel("b")
F1 = ModeLabel("f1", Statistics.FERMIONIC)
F2 = ModeLabel("f2", Statistics.FERMIONIC)


def random_state(rng, modes, n_max):
    basis = enumerate_basis(modes, n_max)
    z = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    z /= np.linalg.norm(z)
    return StateVector(tuple(modes), dict(zip(basis, z)), n_max), basis, z


class TestLadder:
    def test_creation_matches_dense_matrix(self):
        rng = np.random.default_rng(1)
        state, basis, z = random_state(rng, [A], 6)
        dense = destroy(7).conj().T @ z
        out = apply_creation(state, A)
        # |6> overflows the cap and is dropped into the deficit
        np.testing.assert_allclose(out.vector(basis), dense, atol=1e-14)
        assert out.deficit == pytest.approx(abs(z[6]) ** 2 * 7)

    def test_annihilation_matches_dense_matrix(self):
        rng = np.random.default_rng(2)
        state, basis, z = random_state(rng, [A, B], 3)
        dense = np.kron(np.eye(4), destroy(4)) @ z
        np.testing.assert_allclose(apply_annihilation(state, B).vector(basis), dense, atol=1e-14)

    def test_commutator_on_number_state(self):
        s = basis_state((A,), (3,), n_max=10)
        lhs = apply_annihilation(apply_creation(s, A), A) - apply_creation(apply_annihilation(s, A), A)
        assert lhs.max_abs_difference(s) < 1e-14

    def test_fermion_pauli_exclusion(self):
        s = basis_state((F1,), (1,))
        assert apply_creation(s, F1).is_zero()
        assert apply_annihilation(basis_state((F1,), (0,)), F1).is_zero()

    def test_fermion_occupation_above_one_rejected(self):
        with pytest.raises(ValueError):
            StateVector((F1,), {(2,): 1.0})

    def test_unknown_mode(self):
        with pytest.raises((KeyError, ValueError)):
            apply_creation(basis_state((A,), (0,)), "zz")


class TestBasis:
    def test_lexicographic(self):
        assert enumerate_basis([A, B], 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_fermion_default_cap(self):
        assert len(enumerate_basis([F1, F2])) == 4

    def test_truncation_for_squeezing(self):
        cfg = TruncationConfig.for_squeezing(1.0, 1e-10)
        assert math.tanh(1.0) ** (2 * (cfg.n_max + 1)) < 1e-10

    def test_tensor_rejects_overlap(self):
        with pytest.raises(ValueError):
            tensor(basis_state((A,), (0,)), basis_state((A,), (1,)))

    def test_vector_outside_basis(self):
        with pytest.raises(ValueError):
            basis_state((A,), (5,)).vector([(0,), (1,)])


class TestPartialTrace:
    def test_matches_einsum(self):
        rng = np.random.default_rng(3)
        state, basis, z = random_state(rng, [A, B], 3)
        rho = density_from_pure(state, basis)
        for keep, idx in (([A], [0]), ([B], [1])):
            ref = ptrace_dense(np.outer(z, z.conj()), [4, 4], idx)
            np.testing.assert_allclose(partial_trace(rho, keep).matrix, ref, atol=1e-14)

    def test_reduce_pure_equals_partial_trace(self):
        rng = np.random.default_rng(4)
        state, basis, _ = random_state(rng, [A, B], 4)
        full = partial_trace(density_from_pure(state, basis), [B])
        sparse = reduce_pure(state, [B], [(n,) for n in range(5)])
        np.testing.assert_allclose(sparse.matrix, full.matrix, atol=1e-14)

    @given(hnp.arrays(np.float64, 18, elements=st.floats(-1, 1)), st.integers(0, 1))
    def test_schmidt_symmetry(self, raw, side):
        # pure bipartite states have equal entropies on both sides
        z = raw[:9] + 1j * raw[9:]
        if np.linalg.norm(z) < 1e-3:
            return
        z = z / np.linalg.norm(z)
        basis = enumerate_basis([A, B], 2)
        rho = density_from_pure(StateVector((A, B), dict(zip(basis, z)), 2), basis)
        sa = von_neumann_entropy(partial_trace(rho, [A]))
        sb = von_neumann_entropy(partial_trace(rho, [B]))
        assert sa == pytest.approx(sb, abs=1e-9)
        kept = partial_trace(rho, [A, B][side:side + 1])
        assert kept.trace() == pytest.approx(1.0, abs=1e-12)
        assert np.all(kept.eigenvalues() > -1e-12)


class TestEntropy:
    def test_maximally_mixed(self):
        rho = DensityOperator((A,), ((0,), (1,), (2,), (3,)), np.eye(4) / 4)
        assert von_neumann_entropy(rho) == pytest.approx(2.0, abs=1e-14)

    def test_pure_is_zero(self):
        rho = density_from_pure(basis_state((A,), (1,), n_max=2), [(0,), (1,), (2,)])
        assert von_neumann_entropy(rho) == 0.0

    @given(hnp.arrays(np.float64, 16, elements=st.floats(-1, 1)))
    def test_against_dense_oracle(self, raw):
        m = (raw[:16].reshape(4, 4))
        rho = m @ m.T + 1e-3 * np.eye(4)
        rho /= np.trace(rho)
        op = DensityOperator((A,), tuple((n,) for n in range(4)), rho)
        assert von_neumann_entropy(op) == pytest.approx(entropy_bits(rho), abs=1e-10)

    def test_clamp_warning_and_count(self):
        with pytest.warns(PSDClampWarning):
            s, clamped = entropy_from_eigenvalues(np.array([0.5, 0.5, -1e-12]), return_clamped=True)
        assert clamped == 1 and s == pytest.approx(1.0)

    def test_noise_below_floor_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            entropy_from_eigenvalues(np.array([1.0, -1e-17]))

    def test_large_negative_rejected(self):
        with pytest.raises(ValueError):
            entropy_from_eigenvalues(np.array([1.1, -0.1]))


class TestFidelity:
    def test_overlap(self):
        psi = StateVector((A, B), {(1, 0): 0.6, (0, 1): 0.8}, 1)
        basis = enumerate_basis([A, B], 1)
        mixed = DensityOperator((A, B), basis, 0.5 * density_from_pure(psi, basis).matrix + 0.5 * np.diag([0, 0, 0, 1]))
        assert fidelity_pure(psi, mixed) == pytest.approx(0.5, abs=1e-15)

    def test_mode_mismatch(self):
        psi = basis_state((A,), (0,))
        rho = density_from_pure(basis_state((B,), (0,)))
        with pytest.raises(ValueError):
            fidelity_pure(psi, rho)


class TestSerialization:
    def test_density_roundtrip_bit_exact(self):
        rng = np.random.default_rng(5)
        state, basis, _ = random_state(rng, [A, B], 2)
        rho = density_from_pure(state, basis)
        back = loads(dumps(rho))
        assert np.array_equal(back.matrix, rho.matrix)
        assert back.basis == rho.basis and back.mode_names == rho.mode_names

    def test_state_roundtrip(self):
        s = StateVector((F1, F2), {(1, 0): 0.6j, (0, 1): 0.8}, 1)
        back = loads(dumps(s))
        assert back.max_abs_difference(s) == 0.0
        assert back.modes[0].statistics is Statistics.FERMIONIC

    def test_schema_tag(self):
        doc = json.loads(dumps(density_from_pure(basis_state((A,), (0,)))))
        assert doc["schema"].endswith("density-operator") and doc["version"] == 1

    def test_bad_schema(self):
        with pytest.raises(ValueError):
            loads(json.dumps({"schema": "nope", "version": 1}))
