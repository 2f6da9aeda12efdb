"""Ground-state energies of trapped quantum gases.

Approximation schemes (large-dimension effective-potential expansion,
Thomas-Fermi limit, semiclassically corrected Thomas-Fermi, and their
combination in N dimensions) together with numerically exact reference
solvers to validate them, plus a CLI that emits benchmark tables and
sweep curves as CSV/JSON.
"""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatch,
    Diverged,
    DomainError,
    Error,
    GridTooNarrow,
    NoBracket,
    NoConvergence,
)
from .numerics import (
    Grid1D,
    GridFunction,
    Tolerance,
    find_root_bracketed,
    integrate,
    lowest_eigenpair_tridiag,
    minimize_scalar,
)
from .largen import (
    CurvatureMode,
    EnergyEstimate,
    Harmonic,
    LargeNResult,
    PotentialKind,
    Quartic,
    effective_potential,
    first_correction,
    leading_order,
    quartic_energy_unit,
    two_term_energy,
)
from .gpe1d import (
    Gpe1DParams,
    SweepRow,
    TfWkbBreakdown,
    VariationalResult,
    WkbForm,
    sweep_methods,
    tf_density,
    tf_energy,
    tf_wkb_closed,
    tf_wkb_numeric,
    variational_delta,
    wkb_action,
)
from .gpend import (
    NdTfSolution,
    PhysicalTrap,
    Table1Row,
    TABLE1_N_VALUES,
    cs133_trap,
    gamma_from_physical,
    gamma_nd_of_eps,
    gamma_of_ebar_3d,
    norm_bracket,
    solid_angle,
    solve_ebar_3d,
    solve_eps_general,
    table1,
    turning_points,
)

__all__ = [name for name in dir() if not name.startswith("_")]
