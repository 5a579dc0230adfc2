import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import constants

from rindler_teleport.fock import Statistics
from rindler_teleport.relativity import (
    AccelerationParams,
    SqueezeParameter,
    line_element_check,
    omega_from_squeeze,
    rindler_to_minkowski,
    squeeze,
    squeeze_bosonic,
    squeeze_fermionic,
    unruh_temperature,
    worldline,
)


def test_zero_acceleration_is_inertial():
    p = AccelerationParams(0.0, 1.0)
    assert squeeze_bosonic(p).r == 0.0 and squeeze_fermionic(p).r == 0.0
    assert unruh_temperature(p) == 0.0


@pytest.mark.parametrize("omega_big", [1e-6, 0.05, 0.3, 1.0, 4.0])
def test_squeeze_against_mpmath(omega_big):
    p = AccelerationParams(1.0, omega_big, c=1.0)
    with mpmath.workdps(40):
        q = mpmath.exp(-mpmath.pi * omega_big)
        rb, rf = mpmath.atanh(q), mpmath.atan(q)
    assert squeeze_bosonic(p).r == pytest.approx(float(rb), rel=1e-13)
    assert squeeze_fermionic(p).r == pytest.approx(float(rf), rel=1e-13)


def test_fermionic_bounded_by_quarter_pi():
    assert squeeze_fermionic(AccelerationParams(1e30, 1.0, c=1.0)).r == pytest.approx(math.pi / 4)
    with pytest.raises(ValueError):
        SqueezeParameter(1.0, Statistics.FERMIONIC)


@given(st.floats(1e-3, 8.0))
def test_inverse_roundtrip(omega_big):
    for stats in Statistics:
        r = squeeze(AccelerationParams(1.0, omega_big, c=1.0), stats).r
        assert omega_from_squeeze(r, stats) == pytest.approx(omega_big, rel=1e-10)


def test_terrestrial_acceleration_is_tiny():
    p = AccelerationParams(9.81, 2 * math.pi * 5e14)
    assert p.a / p.c == pytest.approx(3.27e-8, rel=1e-2)
    assert squeeze_bosonic(p).r == 0.0
    assert unruh_temperature(p) == pytest.approx(constants.hbar * 9.81 / (2 * math.pi * constants.c * constants.k))


def test_natural_units():
    assert unruh_temperature(AccelerationParams(2 * math.pi, 1.0, c=1.0), natural_units=True) == pytest.approx(1.0)


@pytest.mark.parametrize("bad", [dict(a=-1.0, omega=1.0), dict(a=1.0, omega=0.0), dict(a=1.0, omega=1.0, c=0.0)])
def test_invalid_params(bad):
    with pytest.raises(ValueError):
        AccelerationParams(**bad)


@given(st.floats(0.01, 100.0), st.floats(-5.0, 5.0))
def test_worldline_hyperbola(a, tau_scaled):
    t, z = worldline(tau_scaled / a, a)
    # z^2 - t^2 cancels two numbers of size z^2 + t^2; allow a few ulps of that
    assert abs((z * z - t * t) - a ** -2) <= 4 * np.finfo(float).eps * (z * z + t * t)


def test_worldline_velocity_subluminal():
    tau = np.linspace(-3, 3, 61)
    t, z = worldline(tau, 1.0)
    assert np.all(np.abs(np.diff(z) / np.diff(t)) < 1)


def test_rindler_map_matches_worldline():
    a = 2.5
    tau = np.linspace(-1, 1, 5)
    t1, z1 = worldline(tau, a)
    t2, z2 = rindler_to_minkowski(a * tau, 1 / a)
    np.testing.assert_allclose(t1, t2, atol=1e-15)
    np.testing.assert_allclose(z1, z2, atol=1e-15)


@given(st.floats(-2, 2), st.floats(0.1, 5), st.floats(-1, 1), st.floats(-1, 1))
def test_line_element_preserved(eta, zeta, de, dz):
    mink, rind = line_element_check(eta, zeta, de, dz)
    assert mink == pytest.approx(rind, abs=1e-6 * max(1.0, abs(rind)))
