"""Rankine-Hugoniot jump from a supersonic state to its subsonic partner.

Across a normal shock the mass flux rho*u is continuous and both sides share
the same Bernoulli constant, so the downstream state is the unique strictly
subsonic speed carrying the upstream flux.  Pressure rises across the jump
(the entropy condition), and the jump map u_minus -> u_plus is strictly
decreasing with derivative

    du_plus/du_minus = ((c_-**2 - u_-**2) * u_-**(gamma-2))
                     / ((c_+**2 - u_+**2) * u_+**(gamma-2))  < 0.

A consequence of flux continuity is c_-**2 * u_-**(gamma-1) =
c_+**2 * u_+**(gamma-1); ``jump_identity_residual`` evaluates an expression
that this relation forces to vanish identically, as a numerical diagnostic.
"""

from dataclasses import dataclass

import numpy as np

from . import gas as gas_model
from .errors import InvariantViolation, NotSupersonic, SpeedOutOfRange
from .gas import Regime
from .rootfind import bisect_secant


@dataclass(frozen=True)
class ShockJump:
    """Matched supersonic/subsonic pair at a shock location."""

    x_b: float
    u_minus: float
    u_plus: float
    rho_minus: float
    rho_plus: float
    p_minus: float
    p_plus: float
    c_minus: float
    c_plus: float


def _require_supersonic(gas, u_minus):
    arr = np.asarray(u_minus, dtype=float)
    umax = gas_model.max_speed(gas)
    if np.any(arr >= umax) or np.any(arr < 0.0):
        raise SpeedOutOfRange(f"upstream speed must lie in [0, {umax:.12g})")
    if np.any(arr <= gas_model.critical_speed(gas)):
        raise NotSupersonic("upstream speed must be strictly supersonic")
    return arr


def jump_from_supersonic(gas, u_minus, *, rtol=1e-12):
    """Downstream subsonic speed with the same mass flux as ``u_minus``.

    Accepts scalar or array input.  The subsonic side of the mass-flux curve
    rises monotonically from zero to its sonic maximum, so the matching speed
    is found by bracketed root finding on (0, critical_speed).
    """
    arr = _require_supersonic(gas, u_minus)
    scalar = arr.ndim == 0
    target = gas_model.mass_flux(gas, arr)

    def f(u):
        return gas_model.density_of_speed(gas, u) * u - target

    cs = gas_model.critical_speed(gas)
    eps = 1e-12 * gas_model.max_speed(gas)
    lo = np.full(arr.shape, eps) if arr.shape else eps
    hi = np.full(arr.shape, cs) if arr.shape else cs
    root = bisect_secant(f, lo, hi, rtol=rtol)
    return float(root) if scalar else root


def make_jump(gas, x_b, u_minus) -> ShockJump:
    """Fully populated jump at coordinate ``x_b``; all invariants verified."""
    u_minus = float(u_minus)
    _require_supersonic(gas, u_minus)
    u_plus = jump_from_supersonic(gas, u_minus)
    jump = ShockJump(
        x_b=float(x_b),
        u_minus=u_minus,
        u_plus=u_plus,
        rho_minus=gas_model.density_of_speed(gas, u_minus),
        rho_plus=gas_model.density_of_speed(gas, u_plus),
        p_minus=gas_model.pressure_of_speed(gas, u_minus),
        p_plus=gas_model.pressure_of_speed(gas, u_plus),
        c_minus=gas_model.sonic_speed_of_speed(gas, u_minus),
        c_plus=gas_model.sonic_speed_of_speed(gas, u_plus),
    )
    _verify_jump(gas, jump)
    return jump


def _verify_jump(gas, jump):
    cs = gas_model.critical_speed(gas)
    if not jump.u_minus > cs > jump.u_plus:
        raise InvariantViolation("jump does not straddle the critical speed")
    flux_minus = jump.rho_minus * jump.u_minus
    flux_plus = jump.rho_plus * jump.u_plus
    if abs(flux_minus - flux_plus) > 1e-12 * abs(flux_minus):
        raise InvariantViolation(
            f"mass flux not continuous across the jump: {flux_minus!r} vs {flux_plus!r}"
        )
    # both sides were built from the same Bernoulli constant; check anyway
    g = gas.gamma
    bern_minus = 0.5 * jump.u_minus**2 + jump.c_minus**2 / (g - 1.0)
    bern_plus = 0.5 * jump.u_plus**2 + jump.c_plus**2 / (g - 1.0)
    if abs(bern_minus - bern_plus) > 1e-12 * abs(bern_minus):
        raise InvariantViolation("Bernoulli sum differs across the jump")
    if not jump.p_minus < jump.p_plus:
        raise InvariantViolation("entropy condition violated: pressure does not rise")


def jump_derivative(gas, u_minus):
    """Sensitivity du_plus/du_minus of the jump map; always negative."""
    arr = _require_supersonic(gas, u_minus)
    scalar = arr.ndim == 0
    u_plus = jump_from_supersonic(gas, arr)
    g = gas.gamma
    cm2 = gas.c0**2 - 0.5 * (g - 1.0) * arr**2
    cp2 = gas.c0**2 - 0.5 * (g - 1.0) * np.asarray(u_plus) ** 2
    val = ((cm2 - arr**2) * arr ** (g - 2.0)) / (
        (cp2 - np.asarray(u_plus) ** 2) * np.asarray(u_plus) ** (g - 2.0)
    )
    return float(val) if scalar else val


def identity_residual(gas, u_minus, u_plus):
    """Residual of the expression the flux relation forces to vanish:

    c_+**2 * (1 - ((c_+**2 - u_+**2)/c_-**2) * (u_+/u_-)**(gamma-1)) - u_+**2.
    """
    u_minus = np.asarray(u_minus, dtype=float)
    u_plus = np.asarray(u_plus, dtype=float)
    g = gas.gamma
    cm2 = gas.c0**2 - 0.5 * (g - 1.0) * u_minus**2
    cp2 = gas.c0**2 - 0.5 * (g - 1.0) * u_plus**2
    val = cp2 * (1.0 - ((cp2 - u_plus**2) / cm2) * (u_plus / u_minus) ** (g - 1.0)) - u_plus**2
    return float(val) if val.ndim == 0 else val


def relation_residual(gas, u_minus, u_plus):
    """Relative residual of c_-**2 * u_-**(gamma-1) = c_+**2 * u_+**(gamma-1)."""
    u_minus = np.asarray(u_minus, dtype=float)
    u_plus = np.asarray(u_plus, dtype=float)
    g = gas.gamma
    lhs = (gas.c0**2 - 0.5 * (g - 1.0) * u_minus**2) * u_minus ** (g - 1.0)
    rhs = (gas.c0**2 - 0.5 * (g - 1.0) * u_plus**2) * u_plus ** (g - 1.0)
    val = np.abs(lhs - rhs) / np.abs(lhs)
    return float(val) if val.ndim == 0 else val


def jump_identity_residual(gas, jump: ShockJump):
    """Identity residual evaluated on a constructed jump (a diagnostic)."""
    return identity_residual(gas, jump.u_minus, jump.u_plus)


def jump_relation_residual(gas, jump: ShockJump):
    """Auxiliary flux relation residual evaluated on a constructed jump."""
    return relation_residual(gas, jump.u_minus, jump.u_plus)
