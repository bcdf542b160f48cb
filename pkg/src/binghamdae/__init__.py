"""Backward-Euler DAE solver for mass-spring systems with Bingham-type dashpots."""

from .constitutive import (
    Bingham,
    ConstitutiveError,
    GenericMonotone,
    LinearViscous,
    SetValuedError,
    SystemParams,
    bingham_force_from_velocity,
    bingham_velocity,
    dashpot_residual,
    law_wellformed,
    spring_displacement,
)
from .filippov import (
    AccelInterval,
    InclusionReport,
    Singleton,
    check_inclusion,
    contains,
    filippov_set,
)
from .forcing import F1, F2, Constant, Tabulated, WindowedSinusoid, Zero, max_abs_on_grid
from .scenarios import (
    ScenarioId,
    TrajectorySummary,
    energy_audit,
    naive_signum_simulate,
    run_paper_case,
    summarize,
)
from .stepper import (
    StepMode,
    Trajectory,
    convergence_study,
    corrector_bingham,
    corrector_generic,
    predictor,
    residual_check,
    simulate,
    step,
)
from .system import (
    EquilibriumInterval,
    State,
    consistent_init,
    equilibrium_interval,
    is_equilibrium,
    rhs_ode_part,
)

__version__ = "0.1.0"
