import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import two_mode_squeezed_vacuum
from rindler_teleport.pdc import (
    SqueezeMatrix,
    input_annihilators,
    invert_bogoliubov,
    pdc_vacuum,
    photon_number_difference,
    reduced_thermal_pdc,
    unruh_temperature_from_matrix,
    validate_bogoliubov,
)
from rindler_teleport.vacuum import thermal_reduction_bosonic


def test_identity_is_trivial():
    s = SqueezeMatrix.identity()
    vac = pdc_vacuum(s, 5)
    assert vac.amplitude((0, 0)) == 1.0
    assert all(vac.amplitude((n, n)) == 0 for n in range(1, 6))
    assert unruh_temperature_from_matrix(s, 1.0) == 0.0


@given(st.floats(0, 2), st.floats(-math.pi, math.pi))
def test_two_mode_is_bogoliubov(r, phi):
    assert validate_bogoliubov(SqueezeMatrix.two_mode(r, phi)).valid


@pytest.mark.parametrize("phi", [0.4, 1.3, -2.0])
def test_same_phase_on_both_off_diagonals_breaks_commutation(phi):
    r = 0.7
    ch, sh = math.cosh(r), math.sinh(r)
    bad = SqueezeMatrix(ch, cmath.exp(1j * phi) * sh, cmath.exp(1j * phi) * sh, ch)
    res = validate_bogoliubov(bad)
    assert not res.valid
    assert res.cross == pytest.approx(2 * ch * sh * abs(math.sin(phi)), rel=1e-12)


@given(st.floats(0, 2), st.floats(-math.pi, math.pi))
def test_inverse(r, phi):
    s = SqueezeMatrix.two_mode(r, phi)
    np.testing.assert_allclose(invert_bogoliubov(s).as_array() @ s.as_array(), np.eye(2), atol=1e-12)


def test_invalid_matrix_rejected():
    with pytest.raises(ValueError):
        pdc_vacuum(SqueezeMatrix(1.0, 0.5, 0.5, 1.0), 4)
    with pytest.raises(ValueError):
        unruh_temperature_from_matrix(SqueezeMatrix(1.0, 0.0, 2.0, 1.0), 1.0)


@pytest.mark.parametrize("r, phi", [(0.3, 0.0), (0.8, 1.1), (1.2, -2.5)])
def test_vacuum_matches_matrix_exponential(r, phi):
    dim = 90
    ref = np.diag(two_mode_squeezed_vacuum(r, dim, phi))
    vac = pdc_vacuum(SqueezeMatrix.two_mode(r, phi), 30)
    got = np.array([vac.amplitude((n, n)) for n in range(31)])
    np.testing.assert_allclose(got, ref[:31], atol=1e-10)


@pytest.mark.parametrize("phi", [0.0, 0.9])
def test_input_annihilators_kill_vacuum(phi):
    n_max = 40
    s = SqueezeMatrix.two_mode(0.6, phi)
    vac = pdc_vacuum(s, n_max)
    for out in input_annihilators(s, vac):
        # only the truncation edge survives
        interior = {k: v for k, v in out.amplitudes.items() if max(k) < n_max}
        assert max(abs(v) for v in interior.values()) < 1e-12


def test_photon_number_difference_conserved():
    assert photon_number_difference(pdc_vacuum(SqueezeMatrix.two_mode(1.0, 0.3), 30)) == 0.0


@pytest.mark.parametrize("r", [0.2, 0.9])
def test_idler_is_thermal(r):
    red = reduced_thermal_pdc(SqueezeMatrix.two_mode(r, 0.7), 25)
    np.testing.assert_allclose(red.matrix, thermal_reduction_bosonic(r, 25).matrix, atol=1e-12)


@given(st.floats(0.05, 2.0), st.floats(0.1, 10.0))
def test_thermal_temperature_reproduces_populations(r, omega):
    s = SqueezeMatrix.two_mode(r)
    t = unruh_temperature_from_matrix(s, omega, natural_units=True)
    pops = np.real(np.diag(reduced_thermal_pdc(s, 3).matrix))
    assert pops[1] / pops[0] == pytest.approx(math.exp(-omega / t), rel=1e-10)
    printed = unruh_temperature_from_matrix(s, omega, natural_units=True, convention="printed")
    assert printed == pytest.approx(t / math.pi, rel=1e-14)


def test_unknown_convention():
    with pytest.raises(ValueError):
        unruh_temperature_from_matrix(SqueezeMatrix.two_mode(0.5), 1.0, convention="other")
