import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from transhock import (
    GasParams,
    NotSupersonic,
    SpeedOutOfRange,
    critical_speed,
    jump_derivative,
    jump_from_supersonic,
    jump_identity_residual,
    jump_relation_residual,
    make_jump,
    mass_flux,
    max_speed,
    pressure_of_speed,
)
from transhock.shock import identity_residual, relation_residual

U_SUP = math.sqrt(1.0 + math.sqrt(0.7984))  # supersonic root paired with 0.4032 at width 1


def test_jump_examples(gas3):
    # gamma = 3 closed form: u_plus**2 = 2*c0**2/2 ... = 2 - u_minus**2
    assert jump_from_supersonic(gas3, 1.2) == pytest.approx(math.sqrt(0.56), rel=1e-12)
    assert jump_from_supersonic(gas3, U_SUP) == pytest.approx(
        math.sqrt(2.0 - U_SUP**2), rel=1e-10
    )


def test_jump_sonic_fixed_point(gas3):
    u_plus = jump_from_supersonic(gas3, 1.0 + 1e-9)
    assert 0.0 < 1.0 - u_plus < 1e-6


def test_jump_rejects_non_supersonic(gas3):
    with pytest.raises(NotSupersonic):
        jump_from_supersonic(gas3, 0.9)
    with pytest.raises(NotSupersonic):
        jump_from_supersonic(gas3, critical_speed(gas3))
    with pytest.raises(SpeedOutOfRange):
        jump_from_supersonic(gas3, max_speed(gas3))


def test_make_jump_populates_and_verifies(gas3):
    jump = make_jump(gas3, 1.5, 1.2)
    assert jump.x_b == 1.5
    assert jump.p_minus == pytest.approx(math.sqrt(0.56 / 3.0) ** 3, rel=1e-12)
    assert jump.p_plus == pytest.approx(math.sqrt(0.48) ** 3, rel=1e-12)
    assert jump.p_minus < jump.p_plus
    flux = jump.rho_minus * jump.u_minus
    assert flux == pytest.approx(1.2 * math.sqrt(0.56 / 3.0), rel=1e-12)
    assert jump.rho_plus * jump.u_plus == pytest.approx(flux, rel=1e-12)
    with pytest.raises(NotSupersonic):
        make_jump(gas3, 1.5, critical_speed(gas3))


def test_jump_derivative_example(gas3):
    expected = ((0.56 - 1.44) * 1.2) / ((1.44 - 0.56) * math.sqrt(0.56))
    assert jump_derivative(gas3, 1.2) == pytest.approx(expected, rel=1e-9)
    assert expected == pytest.approx(-1.6035674514745463, rel=1e-12)


def test_jump_derivative_matches_finite_differences(gas3):
    h = 1e-6
    for u in (1.05, 1.2, 1.3, 1.39):
        fd = (jump_from_supersonic(gas3, u + h) - jump_from_supersonic(gas3, u - h)) / (
            2.0 * h
        )
        assert jump_derivative(gas3, u) == pytest.approx(fd, rel=1e-6)


def test_jump_derivative_negative_and_sonic_limit(gas3):
    us = np.linspace(1.0, math.sqrt(2.0), 200)[1:-1]
    assert np.all(jump_derivative(gas3, us) < 0.0)
    # the mass-flux curve flattens at the sonic point, so the conjugate root
    # loses accuracy like 1/eps there; stay at 1e-5 where it is well posed
    assert jump_derivative(gas3, 1.0 + 1e-5) == pytest.approx(-1.0, abs=1e-4)


def test_jump_map_strictly_decreasing(gas3):
    us = np.linspace(1.0, math.sqrt(2.0), 500)[1:-1]
    ups = jump_from_supersonic(gas3, us)
    assert np.all(np.diff(ups) < 0.0)


def test_jump_of_downstream_state_rejected(gas3):
    u_plus = jump_from_supersonic(gas3, 1.2)
    with pytest.raises(NotSupersonic):
        jump_from_supersonic(gas3, u_plus)


def test_identity_residual_examples(gas3):
    for u_minus in (1.2, U_SUP):
        jump = make_jump(gas3, 0.0, u_minus)
        assert abs(jump_identity_residual(gas3, jump)) < 1e-12
        assert jump_relation_residual(gas3, jump) < 1e-12


def test_identity_residual_across_gammas():
    for gamma in (1.4, 5.0 / 3.0, 2.0, 3.0):
        gas = GasParams(gamma, math.sqrt(2.0))
        us = np.linspace(critical_speed(gas), max_speed(gas), 102)[1:-1]
        ups = jump_from_supersonic(gas, us)
        assert np.max(np.abs(identity_residual(gas, us, ups))) < 1e-11
        assert np.max(relation_residual(gas, us, ups)) < 1e-12


def test_entropy_condition_dense(gas3):
    us = np.linspace(critical_speed(gas3), max_speed(gas3), 1002)[1:-1]
    ups = jump_from_supersonic(gas3, us)
    assert np.all(pressure_of_speed(gas3, us) < pressure_of_speed(gas3, ups))


@settings(max_examples=60, deadline=None)
@given(
    gamma=st.floats(1.05, 4.0),
    c0=st.floats(0.2, 5.0),
    frac=st.floats(0.01, 0.95),
)
def test_jump_properties_random_gas(gamma, c0, frac):
    gas = GasParams(gamma, c0)
    cs = critical_speed(gas)
    u_minus = cs + frac * (max_speed(gas) - cs)
    u_plus = jump_from_supersonic(gas, u_minus)
    assert 0.0 < u_plus < cs < u_minus
    assert mass_flux(gas, u_plus) == pytest.approx(mass_flux(gas, u_minus), rel=1e-11)
    assert pressure_of_speed(gas, u_minus) < pressure_of_speed(gas, u_plus)
