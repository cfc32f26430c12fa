"""Transonic shock families in curved axisymmetric nozzles.

Constructs the one-parameter family of symmetric transonic shock solutions
for steady potential flow on axisymmetric surfaces described by a positive
width profile, and verifies the algebraic identities the construction rests
on, chief among them that the exit speed does not depend on where the shock
sits.
"""

from .branch import (
    BranchConstant,
    SpeedProfile,
    branch_profile,
    first_integral,
    integrate_ode,
    ode_rhs,
    solve_speed,
    sonic_maximum,
)
from .errors import (
    Choked,
    InvariantViolation,
    NoSubsonicRoot,
    NotSupersonic,
    OutOfDomain,
    SonicApproach,
    SonicSingularity,
    SpeedOutOfRange,
    TranshockError,
    ValidationError,
)
from .family import (
    NozzleProblem,
    SolvabilityReport,
    SweepReport,
    TransonicSolution,
    build_solution,
    exit_speed,
    potential,
    psi_comparison,
    solvability,
    sweep,
)
from .gas import (
    FlowState,
    GasParams,
    Regime,
    classify,
    critical_speed,
    density_of_speed,
    flow_state,
    mass_flux,
    max_speed,
    pressure_of_speed,
    sonic_speed_of_speed,
)
from .geometry import CoshLike, Linear, MetricProfile, Sphere, Tabulated
from .residuals import (
    ConvergenceStudy,
    ResidualReport,
    classify_field,
    ode_residual,
    pde_residual,
    residual_convergence,
)
from .shock import (
    ShockJump,
    jump_derivative,
    jump_from_supersonic,
    jump_identity_residual,
    jump_relation_residual,
    make_jump,
)

__version__ = "0.1.0"
