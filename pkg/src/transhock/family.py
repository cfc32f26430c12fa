"""Transonic shock solutions for a nozzle problem and the family they form.

A problem fixes the gas, the geometry, an entry coordinate x0 with a
supersonic entry speed u0, and an exit coordinate x1.  Placing a shock at any
admissible x_b in [x0, x1] yields a full solution: the supersonic branch from
the entry constant up to x_b, the Rankine-Hugoniot jump there, and the
subsonic branch down to the exit.  Because the jump preserves the mass flux
rho*u*n, every member of this one-parameter family exits at the same speed;
``exit_speed`` computes that speed directly from flux conservation between
entry and exit, with no reference to any shock location, and ``sweep``
demonstrates the invariance numerically.

``psi_comparison`` integrates the speed difference between the subsonic
branch of the member with the earlier shock and the supersonic branch of the
member with the later shock over the interval separating the two shocks; the
integrand is negative (the branches are separated by the critical speed), so
the integral is nonpositive and vanishes only for coincident shocks.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from . import branch as branch_mod
from . import gas as gas_model
from . import shock as shock_mod
from .branch import BranchConstant, SpeedProfile, branch_profile, empty_profile, first_integral
from .errors import (
    Choked,
    InvariantViolation,
    NoSubsonicRoot,
    OutOfDomain,
    ValidationError,
)
from .gas import GasParams, Regime
from .geometry import MetricProfile
from .quadrature import cumulative_integral
from .rootfind import BracketError, bisect_secant

#: default quadrature panels per smooth piece (potential and psi integrals)
DEFAULT_PANELS = 10_000

#: grid resolution used to locate the first choked coordinate
_CHOKE_SCAN_SAMPLES = 4097


@dataclass
class NozzleProblem:
    """Nozzle boundary data: entry/exit coordinates, supersonic entry speed,
    and an optional prescribed subsonic exit speed."""

    gas: GasParams
    geom: MetricProfile
    x0: float
    x1: float
    u0: float
    c_exit: float | None = None

    def __post_init__(self):
        self.x0 = float(self.x0)
        self.x1 = float(self.x1)
        self.u0 = float(self.u0)
        if self.c_exit is not None:
            self.c_exit = float(self.c_exit)
        msgs = []
        if not self.geom.x_lo <= self.x0:
            msgs.append(
                f"entry coordinate x0 = {self.x0:.12g} lies before the domain "
                f"start {self.geom.x_lo:.12g}"
            )
        if not self.x1 <= self.geom.x_hi:
            msgs.append(
                f"exit coordinate x1 = {self.x1:.12g} lies past the domain "
                f"end {self.geom.x_hi:.12g}"
            )
        if not self.x0 < self.x1:
            msgs.append(f"x0 = {self.x0:.12g} must be strictly less than x1 = {self.x1:.12g}")
        cs = gas_model.critical_speed(self.gas)
        umax = gas_model.max_speed(self.gas)
        if not cs < self.u0 < umax:
            msgs.append(
                f"entry speed u0 = {self.u0:.12g} must be strictly supersonic, "
                f"inside ({cs:.12g}, {umax:.12g})"
            )
        if self.c_exit is not None and not 0.0 < self.c_exit < cs:
            msgs.append(
                f"prescribed exit speed c_exit = {self.c_exit:.12g} must lie in "
                f"(0, {cs:.12g})"
            )
        if msgs:
            raise ValidationError(msgs)


def entry_constant(problem: NozzleProblem) -> BranchConstant:
    """First-integral value fixed by the entry state."""
    n0 = problem.geom.width(problem.x0)
    return BranchConstant(first_integral(problem.gas, problem.u0, n0))


def _critical_width(problem: NozzleProblem) -> float:
    """Width below which the entry constant exceeds its sonic maximum."""
    cs = gas_model.critical_speed(problem.gas)
    g = problem.gas.gamma
    value = entry_constant(problem).value
    return (value / (2.0 * cs ** (g + 1.0))) ** (1.0 / (g - 1.0))


def _first_choke(geom, x_lo, x_hi, n_crit):
    """First coordinate in [x_lo, x_hi] where the width drops below n_crit,
    refined by bisection; None if the width never does."""
    xs = np.linspace(x_lo, x_hi, _CHOKE_SCAN_SAMPLES)
    bad = np.asarray(geom.width(xs)) < n_crit
    if not bad.any():
        return None
    i = int(np.argmax(bad))
    if i == 0:
        return float(xs[0])
    a, b = float(xs[i - 1]), float(xs[i])
    for _ in range(100):
        mid = 0.5 * (a + b)
        if geom.width(mid) < n_crit:
            b = mid
        else:
            a = mid
    return b


def chokepoint(problem: NozzleProblem):
    """First choked coordinate of the problem, or None when the flow passes."""
    return _first_choke(problem.geom, problem.x0, problem.x1, _critical_width(problem))


def _ensure_passable(problem: NozzleProblem):
    """Raise Choked for an interior chokepoint, NoSubsonicRoot when the width
    only touches the critical width essentially at the exit."""
    x_c = chokepoint(problem)
    if x_c is None:
        return
    if x_c < problem.x1 - 1e-9 * (problem.x1 - problem.x0):
        raise Choked(x_c)
    raise NoSubsonicRoot(
        f"exit mass flux exceeds the sonic maximum at x1 = {problem.x1:.12g}"
    )


def exit_speed(problem: NozzleProblem, *, rtol=1e-12) -> float:
    """Unique subsonic exit speed carrying the entry mass flux to the exit.

    Solves rho(u1)*u1*n(x1) = rho(u0)*u0*n(x0) for u1 below the critical
    speed, directly, with no reference to any shock location.
    """
    gas, geom = problem.gas, problem.geom
    if problem.x1 <= problem.x0:
        raise NoSubsonicRoot("degenerate nozzle: the exit does not lie beyond the entry")
    _ensure_passable(problem)
    flux_target = (
        gas_model.mass_flux(gas, problem.u0)
        * geom.width(problem.x0)
        / geom.width(problem.x1)
    )
    cs = gas_model.critical_speed(gas)
    if flux_target > gas_model.mass_flux(gas, cs):
        raise NoSubsonicRoot(
            f"exit mass flux exceeds the sonic maximum at x1 = {problem.x1:.12g}"
        )

    def f(u):
        return gas_model.density_of_speed(gas, u) * u - flux_target

    eps = 1e-12 * gas_model.max_speed(gas)
    try:
        u1 = bisect_secant(f, eps, cs, rtol=rtol)
    except BracketError as exc:
        raise NoSubsonicRoot("no subsonic speed carries the exit mass flux") from exc
    if not u1 < cs:
        raise NoSubsonicRoot("exit state is sonic, not strictly subsonic")
    return float(u1)


@dataclass
class TransonicSolution:
    """One member of the family: supersonic piece, jump, subsonic piece,
    exit speed, and potential samples (continuous across the shock)."""

    jump: shock_mod.ShockJump
    supersonic_profile: SpeedProfile
    subsonic_profile: SpeedProfile
    u1: float
    phi_minus: np.ndarray
    phi_plus: np.ndarray

    @property
    def x_b(self) -> float:
        return self.jump.x_b

    @property
    def grid(self):
        """Union grid; the shock coordinate appears on both sides of the jump."""
        return np.concatenate([self.supersonic_profile.grid, self.subsonic_profile.grid])

    @property
    def speeds(self):
        return np.concatenate([self.supersonic_profile.speeds, self.subsonic_profile.speeds])

    @property
    def phi(self):
        return np.concatenate([self.phi_minus, self.phi_plus])


def _piece_potential(profile: SpeedProfile, phi0: float):
    """Cumulative integral of the speed over one uniform piece grid."""
    if len(profile) == 0:
        return np.empty(0)
    if len(profile) == 1:
        return np.array([float(phi0)])
    h = (profile.grid[-1] - profile.grid[0]) / (len(profile) - 1)
    return phi0 + cumulative_integral(profile.speeds, h)


def potential(solution: TransonicSolution):
    """Potential samples over the union grid, phi(x0) = 0 by convention."""
    phi_minus = _piece_potential(solution.supersonic_profile, 0.0)
    start = float(phi_minus[-1]) if phi_minus.size else 0.0
    phi_plus = _piece_potential(solution.subsonic_profile, start)
    return np.concatenate([phi_minus, phi_plus])


def build_solution(problem: NozzleProblem, x_b, *, panels=DEFAULT_PANELS) -> TransonicSolution:
    """Assemble the family member with its shock at ``x_b``.

    The supersonic piece carries the entry constant, the subsonic piece the
    post-jump constant; each piece is sampled on ``panels`` uniform panels.
    """
    gas, geom = problem.gas, problem.geom
    x_b = float(x_b)
    if not problem.x0 <= x_b <= problem.x1:
        raise OutOfDomain(
            f"shock location {x_b:.12g} outside [{problem.x0:.12g}, {problem.x1:.12g}]"
        )
    if panels < 2:
        raise ValueError("need at least 2 quadrature panels per piece")
    _ensure_passable(problem)
    constant = entry_constant(problem)

    if x_b > problem.x0:
        sup = branch_profile(
            gas, geom, constant, Regime.SUPERSONIC, np.linspace(problem.x0, x_b, panels + 1)
        )
    else:
        sup = empty_profile(gas, Regime.SUPERSONIC)

    n_b = geom.width(x_b)
    u_minus = branch_mod.solve_speed(gas, constant, n_b, Regime.SUPERSONIC)
    jump = shock_mod.make_jump(gas, x_b, u_minus)
    post_constant = BranchConstant(first_integral(gas, jump.u_plus, n_b))

    if x_b < problem.x1:
        sub = branch_profile(
            gas, geom, post_constant, Regime.SUBSONIC, np.linspace(x_b, problem.x1, panels + 1)
        )
        u1 = float(sub.speeds[-1])
    else:
        sub = empty_profile(gas, Regime.SUBSONIC)
        u1 = jump.u_plus

    phi_minus = _piece_potential(sup, 0.0)
    phi_plus = _piece_potential(sub, float(phi_minus[-1]) if phi_minus.size else 0.0)
    solution = TransonicSolution(
        jump=jump,
        supersonic_profile=sup,
        subsonic_profile=sub,
        u1=u1,
        phi_minus=phi_minus,
        phi_plus=phi_plus,
    )
    _verify_solution(problem, solution)
    return solution


def _verify_solution(problem, solution):
    jump = solution.jump
    sup, sub = solution.supersonic_profile, solution.subsonic_profile
    if len(sup) and abs(sup.speeds[-1] - jump.u_minus) > 1e-10 * jump.u_minus:
        raise InvariantViolation("supersonic piece does not meet the jump")
    if len(sub):
        if abs(sub.speeds[0] - jump.u_plus) > 1e-10 * jump.u_plus:
            raise InvariantViolation("subsonic piece does not meet the jump")
        if abs(sub.speeds[-1] - solution.u1) > 1e-10 * solution.u1:
            raise InvariantViolation("subsonic piece does not end at the exit speed")
    for phi in (solution.phi_minus, solution.phi_plus):
        if phi.size > 1 and np.any(np.diff(phi) < 0.0):
            raise InvariantViolation("potential samples are not nondecreasing")
    u_ref = exit_speed(problem)
    if abs(solution.u1 - u_ref) > 1e-9 * u_ref:
        raise InvariantViolation(
            f"assembled exit speed {solution.u1!r} disagrees with the direct "
            f"exit speed {u_ref!r}"
        )


@dataclass
class SweepReport:
    """Exit speeds across shock locations plus per-location diagnostics."""

    shock_locations: np.ndarray
    exit_speeds: np.ndarray
    u_minus: np.ndarray
    u_plus: np.ndarray
    identity_residuals: np.ndarray
    boundary_members: np.ndarray
    failures: list
    relative_spread: float
    max_exit_derivative: float


def sweep(problem: NozzleProblem, m=None, *, locations=None) -> SweepReport:
    """Build family members at ``m`` equally spaced shock locations (or at the
    given ``locations``) and report their exit speeds.

    The headline quantity is ``relative_spread``, the exit-speed spread over
    all non-failed locations divided by their mean; per-location failures are
    recorded, and the sweep itself fails only if every location fails.
    """
    if locations is None:
        if m is None or int(m) < 2:
            raise ValueError("need at least 2 shock locations")
        locations = np.linspace(problem.x0, problem.x1, int(m))
    else:
        locations = np.atleast_1d(np.asarray(locations, dtype=float))
        if locations.size < 1:
            raise ValueError("need at least one shock location")
        if np.any(locations < problem.x0) or np.any(locations > problem.x1):
            raise OutOfDomain("shock locations must lie inside [x0, x1]")

    gas, geom = problem.gas, problem.geom
    # a chokepoint fails every member of the family at once
    _ensure_passable(problem)

    constant = entry_constant(problem)
    n_b = np.atleast_1d(np.asarray(geom.width(locations), dtype=float))
    u_minus = np.atleast_1d(
        branch_mod.solve_speed_values(gas, constant.value, n_b, Regime.SUPERSONIC)
    )
    cs = gas_model.critical_speed(gas)
    good = u_minus > cs
    failures = [
        (int(i), "upstream state degenerates to sonic at the shock location")
        for i in np.nonzero(~good)[0]
    ]

    u_plus = np.full_like(u_minus, np.nan)
    u1 = np.full_like(u_minus, np.nan)
    residuals = np.full_like(u_minus, np.nan)
    if good.any():
        u_plus[good] = shock_mod.jump_from_supersonic(gas, u_minus[good])
        post_constants = first_integral(gas, u_plus[good], n_b[good])
        n1 = geom.width(problem.x1)
        u1[good] = branch_mod.solve_speed_values(gas, post_constants, n1, Regime.SUBSONIC)
        residuals[good] = shock_mod.identity_residual(gas, u_minus[good], u_plus[good])
    else:
        raise InvariantViolation("every sweep location failed")

    u1_good = u1[good]
    spread = float((u1_good.max() - u1_good.min()) / u1_good.mean())
    loc_good = locations[good]
    if loc_good.size >= 2:
        max_deriv = float(np.max(np.abs(np.diff(u1_good) / np.diff(loc_good))))
    else:
        max_deriv = float("nan")
    boundary = (locations == problem.x0) | (locations == problem.x1)
    return SweepReport(
        shock_locations=locations,
        exit_speeds=u1,
        u_minus=u_minus,
        u_plus=u_plus,
        identity_residuals=residuals,
        boundary_members=boundary,
        failures=failures,
        relative_spread=spread,
        max_exit_derivative=max_deriv,
    )


def psi_comparison(problem: NozzleProblem, x_b, x_b_tilde, *, panels=DEFAULT_PANELS) -> float:
    """Integral over [x_b, x_b_tilde] of (subsonic branch of the member with
    shock at x_b) minus (supersonic branch of the member with shock at
    x_b_tilde).

    Nonpositive, zero exactly when the locations coincide, and strictly
    decreasing in the second argument.
    """
    gas, geom = problem.gas, problem.geom
    x_b = float(x_b)
    x_b_tilde = float(x_b_tilde)
    if not (problem.x0 <= x_b and x_b_tilde <= problem.x1):
        raise OutOfDomain("shock locations must lie inside [x0, x1]")
    if x_b > x_b_tilde:
        raise ValueError(
            f"shock locations out of order: {x_b:.12g} > {x_b_tilde:.12g}"
        )
    if x_b == x_b_tilde:
        return 0.0
    _ensure_passable(problem)

    constant = entry_constant(problem)
    n_b = geom.width(x_b)
    u_minus = branch_mod.solve_speed(gas, constant, n_b, Regime.SUPERSONIC)
    u_plus = shock_mod.jump_from_supersonic(gas, u_minus)
    post_value = first_integral(gas, u_plus, n_b)

    m = int(panels) + int(panels) % 2  # composite Simpson wants an even count
    grid = np.linspace(x_b, x_b_tilde, m + 1)
    widths = np.asarray(geom.width(grid))
    u_sub = branch_mod.solve_speed_values(gas, post_value, widths, Regime.SUBSONIC)
    u_sup = branch_mod.solve_speed_values(gas, constant.value, widths, Regime.SUPERSONIC)
    h = (x_b_tilde - x_b) / m
    return float(simpson(u_sub - u_sup, dx=h))


@dataclass(frozen=True)
class SolvabilityReport:
    """Verdict on a prescribed exit speed against the admissible one."""

    u1: float
    c_exit: float | None
    solvable: bool | None

    @property
    def verdict(self) -> str:
        if self.solvable is None:
            return "unconstrained"
        return "solvable" if self.solvable else "no-solution"


def solvability(problem: NozzleProblem, *, rtol=1e-9) -> SolvabilityReport:
    """Declare the problem solvable iff the prescribed exit speed matches the
    unique admissible exit speed to ``rtol`` relative."""
    u1 = exit_speed(problem)
    if problem.c_exit is None:
        return SolvabilityReport(u1=u1, c_exit=None, solvable=None)
    ok = abs(problem.c_exit - u1) / u1 < rtol
    return SolvabilityReport(u1=u1, c_exit=problem.c_exit, solvable=bool(ok))
