"""Thermodynamic closure for isentropic potential flow.

Everything follows from Bernoulli's law with state function p = rho**gamma:

    u**2/2 + c**2/(gamma - 1) = c0**2/(gamma - 1),    c**2 = gamma * rho**(gamma - 1),

with one stagnation constant c0 > 0 and adiabatic exponent gamma > 1.  All
quantities are nondimensional.

A note on the critical speed: the critical value is sometimes quoted as
2*c0**2/(gamma + 1), which carries squared-speed units, so comparing it with
a flow speed only makes sense after taking a square root.  critical_speed()
returns sqrt(2*c0**2/(gamma + 1)), the unique speed at which u equals the
local sonic speed c(u); the flow is supersonic iff u exceeds it.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import SpeedOutOfRange

#: default half-width of the band around the critical speed classified as sonic
SONIC_TOL = 1e-10


class Regime(enum.Enum):
    SUBSONIC = "subsonic"
    SONIC = "sonic"
    SUPERSONIC = "supersonic"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class GasParams:
    """Adiabatic exponent gamma (> 1) and Bernoulli stagnation constant c0 (> 0)."""

    gamma: float
    c0: float

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must be strictly greater than 1, got {self.gamma}")
        if not self.c0 > 0.0:
            raise ValueError(f"c0 must be strictly positive, got {self.c0}")


@dataclass(frozen=True)
class FlowState:
    """Pointwise flow state: speed, density, sonic speed and regime.

    Satisfies c**2 = gamma * rho**(gamma-1) and Bernoulli's law exactly (to
    floating precision); ``regime`` agrees with the sign of u - critical_speed.
    """

    u: float
    rho: float
    c: float
    regime: Regime


def critical_speed(gas: GasParams) -> float:
    """Speed at which u = c: sqrt(2*c0**2/(gamma + 1))."""
    return math.sqrt(2.0 * gas.c0**2 / (gas.gamma + 1.0))


def max_speed(gas: GasParams) -> float:
    """Vacuum speed sqrt(2*c0**2/(gamma - 1)), where the density reaches zero."""
    return math.sqrt(2.0 * gas.c0**2 / (gas.gamma - 1.0))


def _as_speed(gas, u):
    """Validate 0 <= u < max_speed elementwise; return (array, was_scalar)."""
    arr = np.asarray(u, dtype=float)
    umax = max_speed(gas)
    if np.any(arr < 0.0) or np.any(arr >= umax):
        raise SpeedOutOfRange(
            f"speed must lie in [0, {umax:.12g}), got {u!r}"
        )
    return arr, arr.ndim == 0


def _ret(value, scalar):
    return float(value) if scalar else value


def sonic_speed_of_speed(gas, u):
    """Local sonic speed c with c**2 = c0**2 - (gamma-1)/2 * u**2."""
    arr, scalar = _as_speed(gas, u)
    c = np.sqrt(gas.c0**2 - 0.5 * (gas.gamma - 1.0) * arr**2)
    return _ret(c, scalar)


def density_of_speed(gas, u):
    """Density from Bernoulli's law.

    rho = ((c0**2 - (gamma-1)/2 * u**2) / gamma) ** (1/(gamma-1)),
    strictly decreasing in u, zero in the vacuum limit u -> max_speed.
    """
    arr, scalar = _as_speed(gas, u)
    rho = ((gas.c0**2 - 0.5 * (gas.gamma - 1.0) * arr**2) / gas.gamma) ** (
        1.0 / (gas.gamma - 1.0)
    )
    return _ret(rho, scalar)


def pressure_of_speed(gas, u):
    """Pressure p = rho**gamma; strictly decreasing in u."""
    arr, scalar = _as_speed(gas, u)
    return _ret(density_of_speed(gas, arr) ** gas.gamma, scalar)


def mass_flux(gas, u):
    """Mass flux per unit width, rho(u) * u.

    Vanishes at u = 0 and at the vacuum speed, with its unique interior
    maximum at the critical speed.
    """
    arr, scalar = _as_speed(gas, u)
    return _ret(density_of_speed(gas, arr) * arr, scalar)


def classify(gas, u, *, sonic_tol=SONIC_TOL) -> Regime:
    """Flow regime of speed u: supersonic iff u > critical_speed.

    Speeds within ``sonic_tol`` of the critical speed classify as sonic,
    since exact equality is measure-zero in floating point.
    """
    u = float(u)
    cs = critical_speed(gas)
    if abs(u - cs) <= sonic_tol:
        return Regime.SONIC
    return Regime.SUPERSONIC if u > cs else Regime.SUBSONIC


def flow_state(gas, u, *, sonic_tol=SONIC_TOL) -> FlowState:
    """Build the full pointwise state for speed u."""
    u = float(u)
    return FlowState(
        u=u,
        rho=density_of_speed(gas, u),
        c=sonic_speed_of_speed(gas, u),
        regime=classify(gas, u, sonic_tol=sonic_tol),
    )
