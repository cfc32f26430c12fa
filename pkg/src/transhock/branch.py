"""Smooth-branch flow solving on one side of the sonic speed.

Along a smooth symmetric flow the quantity

    F(u, n) = (2*c0**2 - (gamma-1)*u**2) * (u*n)**(gamma-1)

is conserved, so solving the flow on a branch reduces to inverting F in u at
each width.  F is strictly increasing in u below the critical speed and
strictly decreasing above it (its u-derivative carries the factor
2*c0**2 - (gamma+1)*u**2), which makes each branch a monotone bracket for the
root finder.  F peaks at the critical speed; a branch constant above that
sonic maximum means the flow cannot pass the width at all (choking).

An explicit fourth-order integrator for the equivalent ODE

    du/dx = (n'(x)/n(x)) * c**2 * u / (u**2 - c**2)

is provided as an independent cross-check of the algebraic route.  The ODE is
singular at the sonic speed, so integration aborts inside a guard band.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import gas as gas_model
from .errors import Choked, InvariantViolation, SonicApproach, SonicSingularity, SpeedOutOfRange
from .gas import GasParams, Regime
from .rootfind import BracketError, bisect_secant

#: |u - c| below SONIC_GUARD * c0 aborts ODE integration (the RHS blows up)
SONIC_GUARD = 1e-8

#: default integration step, fine enough for 1e-6 agreement with the algebraic route
DEFAULT_ODE_STEP = 1e-4

#: relative tolerance at which profile nodes must reproduce their branch constant
PROFILE_CONSTANT_RTOL = 1e-10


@dataclass(frozen=True)
class BranchConstant:
    """Conserved value of F(u, n) along one smooth branch."""

    value: float

    def __post_init__(self):
        if not self.value > 0.0:
            raise ValueError(f"branch constant must be positive, got {self.value}")


def first_integral(gas, u, n):
    """F(u, n) = (2*c0**2 - (gamma-1)*u**2) * (u*n)**(gamma-1)."""
    u = np.asarray(u, dtype=float)
    umax = gas_model.max_speed(gas)
    if np.any(u < 0.0) or np.any(u >= umax):
        raise SpeedOutOfRange(f"speed must lie in [0, {umax:.12g})")
    n = np.asarray(n, dtype=float)
    val = (2.0 * gas.c0**2 - (gas.gamma - 1.0) * u**2) * (u * n) ** (gas.gamma - 1.0)
    return float(val) if val.ndim == 0 else val


def sonic_maximum(gas, n):
    """Largest value F(., n) attains at width n: 2 * c_***(gamma+1) * n**(gamma-1)."""
    cs = gas_model.critical_speed(gas)
    n = np.asarray(n, dtype=float)
    val = 2.0 * cs ** (gas.gamma + 1.0) * n ** (gas.gamma - 1.0)
    return float(val) if val.ndim == 0 else val


def solve_speed_values(gas, value, n, branch, *, rtol=1e-12):
    """Invert F(u, n) = value on one branch; value and n may be arrays."""
    value = np.asarray(value, dtype=float)
    n = np.asarray(n, dtype=float)
    if np.any(value > sonic_maximum(gas, n)):
        raise Choked(message="branch constant exceeds the sonic maximum of the first integral")
    cs = gas_model.critical_speed(gas)
    umax = gas_model.max_speed(gas)
    eps = 1e-12 * umax
    if branch is Regime.SUPERSONIC:
        lo, hi = cs, umax - eps
    elif branch is Regime.SUBSONIC:
        lo, hi = eps, cs
    else:
        raise ValueError(f"branch must be SUBSONIC or SUPERSONIC, got {branch}")

    def f(u):
        return (2.0 * gas.c0**2 - (gas.gamma - 1.0) * u**2) * (u * n) ** (
            gas.gamma - 1.0
        ) - value

    shape = np.broadcast_shapes(value.shape, n.shape)
    if shape:
        lo, hi = np.full(shape, lo), np.full(shape, hi)
    try:
        return bisect_secant(f, lo, hi, rtol=rtol)
    except BracketError as exc:
        raise SpeedOutOfRange(
            "first-integral root lies outside the admissible speed range"
        ) from exc


def solve_speed(gas, constant: BranchConstant, n, branch: Regime, *, rtol=1e-12):
    """Unique speed on the requested branch with first_integral(u, n) = constant.

    Raises Choked when the constant exceeds the sonic maximum at width n.
    """
    return solve_speed_values(gas, constant.value, n, branch, rtol=rtol)


@dataclass
class SpeedProfile:
    """Sampled speeds along one smooth branch.

    The grid is strictly increasing and every node lies strictly on the
    declared side of the critical speed (no sonic crossing).  Degenerate
    zero-node profiles represent an empty piece.
    """

    gas: GasParams
    grid: np.ndarray
    speeds: np.ndarray
    branch: Regime
    rho: np.ndarray = field(init=False)
    c: np.ndarray = field(init=False)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.speeds = np.asarray(self.speeds, dtype=float)
        if self.grid.shape != self.speeds.shape or self.grid.ndim != 1:
            raise ValueError("grid and speeds must be 1-D arrays of equal length")
        if np.any(np.diff(self.grid) <= 0.0):
            raise ValueError("grid coordinates must be strictly increasing")
        if self.branch not in (Regime.SUBSONIC, Regime.SUPERSONIC):
            raise ValueError(f"branch must be SUBSONIC or SUPERSONIC, got {self.branch}")
        cs = gas_model.critical_speed(self.gas)
        if self.branch is Regime.SUPERSONIC:
            off_side = self.speeds <= cs
        else:
            off_side = self.speeds >= cs
        if np.any(off_side):
            i = int(np.argmax(off_side))
            raise InvariantViolation(
                f"node {i} (x = {self.grid[i]:.12g}) is not strictly {self.branch}"
            )
        if self.speeds.size:
            self.rho = np.asarray(gas_model.density_of_speed(self.gas, self.speeds))
            self.c = np.asarray(gas_model.sonic_speed_of_speed(self.gas, self.speeds))
        else:
            self.rho = np.empty(0)
            self.c = np.empty(0)

    def __len__(self):
        return self.grid.size

    @property
    def states(self):
        """Per-node FlowState objects (built on demand)."""
        return [gas_model.flow_state(self.gas, u) for u in self.speeds]


def empty_profile(gas, branch) -> SpeedProfile:
    """Zero-node profile for a degenerate (zero-length) piece."""
    return SpeedProfile(gas, np.empty(0), np.empty(0), branch)


def branch_profile(gas, geom, constant: BranchConstant, branch: Regime, grid) -> SpeedProfile:
    """Solve the branch at every grid node from the shared constant.

    Raises Choked at the first node whose width cannot carry the constant.
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.size == 0:
        return empty_profile(gas, branch)
    n = np.atleast_1d(np.asarray(geom.width(grid), dtype=float))
    bad = constant.value > sonic_maximum(gas, n)
    if np.any(bad):
        raise Choked(float(grid[int(np.argmax(bad))]))
    u = np.atleast_1d(solve_speed_values(gas, constant.value, n, branch))
    profile = SpeedProfile(gas, grid, u, branch)
    drift = np.abs(first_integral(gas, u, n) - constant.value) / constant.value
    worst = float(np.max(drift))
    if worst > PROFILE_CONSTANT_RTOL:
        raise InvariantViolation(
            f"first integral drifts by {worst:.3e} relative across the profile"
        )
    return profile


def ode_rhs(gas, geom, u, x):
    """Right-hand side (n'/n) * c**2 * u / (u**2 - c**2) of the speed ODE."""
    u = float(u)
    c = gas_model.sonic_speed_of_speed(gas, u)
    if abs(u - c) < SONIC_GUARD * gas.c0:
        raise SonicSingularity(
            f"ODE right-hand side is singular: |u - c| = {abs(u - c):.3e} at x = {x:.12g}"
        )
    return geom.width_log_derivative(x) * c**2 * u / (u**2 - c**2)


def integrate_ode(gas, geom, u_start, x_start, x_end, step=DEFAULT_ODE_STEP) -> SpeedProfile:
    """Classical fourth-order integration of the speed ODE.

    ``x_end < x_start`` integrates backwards; the returned grid is always
    increasing.  Aborts with SonicApproach if the speed enters the sonic
    guard band mid-integration (an exactly sonic start raises
    SonicSingularity immediately).
    """
    u_start = float(u_start)
    x_start = float(x_start)
    x_end = float(x_end)
    # this first evaluation also rejects an exactly sonic start
    ode_rhs(gas, geom, u_start, x_start)
    branch = (
        Regime.SUPERSONIC
        if u_start > gas_model.critical_speed(gas)
        else Regime.SUBSONIC
    )
    if x_end == x_start:
        return SpeedProfile(gas, np.array([x_start]), np.array([u_start]), branch)

    span = x_end - x_start
    n_steps = max(1, math.ceil(abs(span) / step))
    h = span / n_steps
    guard = SONIC_GUARD * gas.c0
    c0sq = gas.c0**2
    half_gm1 = 0.5 * (gas.gamma - 1.0)

    def rhs(x, u):
        # inline the sonic speed: this runs four times per step
        c2 = c0sq - half_gm1 * u * u
        if c2 <= 0.0:
            raise SpeedOutOfRange(f"speed left the admissible range at x = {x:.12g}")
        c = math.sqrt(c2)
        if abs(u - c) < guard:
            raise SonicApproach(
                f"sonic approach during integration: |u - c| = {abs(u - c):.3e} "
                f"at x = {x:.12g}"
            )
        return geom.width_log_derivative(x) * c2 * u / (u * u - c2)

    cs = gas_model.critical_speed(gas)
    supersonic = branch is Regime.SUPERSONIC
    xs = np.empty(n_steps + 1)
    us = np.empty(n_steps + 1)
    xs[0], us[0] = x_start, u_start
    u = u_start
    for i in range(n_steps):
        x = x_start + i * h
        k1 = rhs(x, u)
        k2 = rhs(x + 0.5 * h, u + 0.5 * h * k1)
        k3 = rhs(x + 0.5 * h, u + 0.5 * h * k2)
        k4 = rhs(x + h, u + h * k3)
        u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        # a stage can leap straight over the narrow |u - c| guard band, so
        # also reject any accepted step that left the starting branch
        if (supersonic and u <= cs + guard) or (not supersonic and u >= cs - guard):
            raise SonicApproach(
                f"sonic approach during integration near x = {x + h:.12g}"
            )
        xs[i + 1] = x + h
        us[i + 1] = u
    xs[-1] = x_end
    if h < 0.0:
        xs = xs[::-1].copy()
        us = us[::-1].copy()
    return SpeedProfile(gas, xs, us, branch)
