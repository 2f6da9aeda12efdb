"""Combined large-dimension + Thomas-Fermi treatment in N dimensions.

Dropping the O(1/N^2) kinetic term of the rescaled N-dimensional
condensate equation leaves an algebraic density bounded by the turning
radii R1 <= R2 with R_{2,1}^2 = eps +/- sqrt(eps^2 - 1/4), eps = E/(N
hbar omega).  Fixing the norm of that density gives one condition per
coupling, solved here for general real dimension N > 2 and in the closed
N = 3 form

    (4/15) sqrt(2 Ebar - 3) [Ebar^2 + (3/4) Ebar - 27/8] = n a / a_osc

with Ebar = E/(hbar omega).

The dimensionless general-N coupling is Gamma_N = g / (hbar omega
a_osc^N), which makes the condition S_N * N^(N/2+1) * B(eps, N) = Gamma_N
with S_N the N-sphere solid angle; at N = 3, Gamma_3 = 4 pi gamma with
gamma = n a / a_osc, and the general solver reduces exactly to the closed
form (enforced by tests).  N <= 2 is rejected: the normalization bracket
has a 1/(N-2) term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from . import numerics
from .constants import ATOMIC_MASS_KG, CS133_MASS_AMU, DEFAULT_SCATTERING_LENGTH_M, DEFAULT_TRAP_OMEGA, HBAR
from .errors import DomainError, Error, NoConvergence

__all__ = [
    "PhysicalTrap",
    "NdTfSolution",
    "Table1Row",
    "TABLE1_N_VALUES",
    "cs133_trap",
    "turning_points",
    "norm_bracket",
    "solid_angle",
    "gamma_nd_of_eps",
    "gamma_of_ebar_3d",
    "solve_eps_general",
    "solve_ebar_3d",
    "gamma_from_physical",
    "table1",
]


@dataclass(frozen=True)
class PhysicalTrap:
    """Isotropic trap and atom parameters in SI units."""

    mass: float               # kg
    omega: float              # rad/s
    scattering_length: float  # m
    particle_count: int

    def __post_init__(self) -> None:
        if not self.mass > 0.0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if not self.omega > 0.0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if not self.scattering_length > 0.0:
            raise DomainError(
                f"scattering_length must be positive, got {self.scattering_length}"
            )
        if self.particle_count < 1:
            raise DomainError(
                f"particle_count must be >= 1, got {self.particle_count}"
            )

    @property
    def a_osc(self) -> float:
        """Oscillator length sqrt(hbar / (m omega)) in meters."""
        return math.sqrt(HBAR / (self.mass * self.omega))

    @property
    def gamma(self) -> float:
        """Dimensionless coupling n * a / a_osc."""
        return self.particle_count * self.scattering_length / self.a_osc


@dataclass(frozen=True)
class NdTfSolution:
    """Solution of the combined approximation at one coupling.

    ``eps`` is E/(N hbar omega), ``e_bar`` = N * eps = E/(hbar omega);
    ``gamma`` echoes the coupling passed to the producing solver (Gamma_N
    for the general solver, n a / a_osc for the 3D one); ``residual`` is
    the normalization-condition mismatch at the returned energy.
    """

    dimension: float
    eps: float
    e_bar: float
    r1: float
    r2: float
    gamma: float
    residual: float


def turning_points(eps: float) -> tuple[float, float]:
    """Turning radii (r1, r2) with r^2 = eps -+ sqrt(eps^2 - 1/4).

    Computed as r2 = sqrt(eps + d), r1 = 1/(2 r2), which keeps the root
    identities r1*r2 = 1/2 and r1^2 + r2^2 = 2*eps at machine precision
    even when eps is large and eps - d cancels.
    """
    if not eps >= 0.5:
        raise DomainError(f"turning points need eps >= 1/2, got {eps}")
    d = math.sqrt(max(eps * eps - 0.25, 0.0))
    r2 = math.sqrt(eps + d)
    return 0.5 / r2, r2


def norm_bracket(eps: float, dimension: float) -> float:
    """Bracket B of the general-N normalization condition.

    B = (eps/N)(R2^N - R1^N) - (R2^(N+2) - R1^(N+2)) / (2(N+2))
        - (R2^(N-2) - R1^(N-2)) / (8(N-2)); zero at eps = 1/2 where the
    turning points merge, strictly increasing in eps beyond.
    """
    if not dimension > 2.0:
        raise DomainError(f"dimension must exceed 2, got {dimension}")
    r1, r2 = turning_points(eps)
    n = float(dimension)
    return (
        (eps / n) * (r2**n - r1**n)
        - (r2 ** (n + 2.0) - r1 ** (n + 2.0)) / (2.0 * (n + 2.0))
        - (r2 ** (n - 2.0) - r1 ** (n - 2.0)) / (8.0 * (n - 2.0))
    )


def solid_angle(dimension: float) -> float:
    """Surface of the unit sphere in ``dimension`` dimensions (4 pi at N=3)."""
    if not dimension > 0.0:
        raise DomainError(f"dimension must be positive, got {dimension}")
    n = float(dimension)
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def gamma_nd_of_eps(eps: float, dimension: float) -> float:
    """Coupling Gamma_N at which ``eps`` solves the general-N condition."""
    n = float(dimension)
    return solid_angle(n) * n ** (n / 2.0 + 1.0) * norm_bracket(eps, n)


def gamma_of_ebar_3d(e_bar: float) -> float:
    """Coupling n a / a_osc at which Ebar solves the closed 3D condition."""
    if not e_bar >= 1.5:
        raise DomainError(f"need e_bar >= 3/2, got {e_bar}")
    return (
        (4.0 / 15.0)
        * math.sqrt(max(2.0 * e_bar - 3.0, 0.0))
        * (e_bar * e_bar + 0.75 * e_bar - 27.0 / 8.0)
    )


def _grow_bracket(f, lo: float, hi: float) -> float:
    # Double hi until f changes sign; the couplings grow without bound in
    # eps, so failure to bracket below the cap means bad input, not a root.
    while f(hi) < 0.0:
        hi *= 2.0
        if hi > 1e6:
            raise NoConvergence(f"no sign change below {hi:g}")
    return hi


_ROOT_TOL = numerics.Tolerance(abs_tol=1e-13, rel_tol=0.0, max_iterations=300)


def solve_eps_general(dimension: float, gamma_nd: float) -> NdTfSolution:
    """Solve the general-N normalization condition for eps at Gamma_N.

    Bisection on [1/2, hi] with hi grown geometrically until the condition
    changes sign; Gamma_N = 0 returns the noninteracting limit eps = 1/2
    (so E = N/2 in units of hbar*omega).
    """
    if not dimension > 2.0:
        raise DomainError(f"dimension must exceed 2, got {dimension}")
    if gamma_nd < 0.0:
        raise DomainError(f"coupling must be >= 0, got {gamma_nd}")
    n = float(dimension)
    if gamma_nd == 0.0:
        r1, r2 = turning_points(0.5)
        return NdTfSolution(n, 0.5, 0.5 * n, r1, r2, 0.0, 0.0)

    def condition(eps: float) -> float:
        return gamma_nd_of_eps(eps, n) - gamma_nd

    hi = _grow_bracket(condition, 0.5, 1.0)
    eps = numerics.find_root_bracketed(condition, 0.5, hi, _ROOT_TOL)
    r1, r2 = turning_points(eps)
    return NdTfSolution(n, eps, n * eps, r1, r2, gamma_nd, abs(condition(eps)))


def solve_ebar_3d(gamma: float) -> NdTfSolution:
    """Solve the closed 3D condition for Ebar = E/(hbar omega) at gamma.

    The left side vanishes (doubly) at Ebar = 3/2 and increases strictly
    beyond, so the root is unique; gamma = 0 returns Ebar = 3/2 exactly.
    """
    if gamma < 0.0:
        raise DomainError(f"coupling must be >= 0, got {gamma}")
    if gamma == 0.0:
        r1, r2 = turning_points(0.5)
        return NdTfSolution(3.0, 0.5, 1.5, r1, r2, 0.0, 0.0)

    def condition(e_bar: float) -> float:
        return gamma_of_ebar_3d(e_bar) - gamma

    hi = _grow_bracket(condition, 1.5, 2.0)
    e_bar = numerics.find_root_bracketed(condition, 1.5, hi, _ROOT_TOL)
    r1, r2 = turning_points(e_bar / 3.0)
    return NdTfSolution(
        3.0, e_bar / 3.0, e_bar, r1, r2, gamma, abs(condition(e_bar))
    )


def gamma_from_physical(trap: PhysicalTrap) -> float:
    """Dimensionless coupling n * a / a_osc of a physical trap."""
    return trap.gamma


#: Atom numbers of the built-in benchmark table.
TABLE1_N_VALUES = (
    200, 600, 1000, 2000, 4000, 6000, 8000, 10000,
    12000, 14000, 16000, 18000, 20000,
)


def cs133_trap(particle_count: int = 200) -> PhysicalTrap:
    """Cs-133 benchmark trap: 133 amu, omega = 20 pi rad/s, a = 3 nm."""
    return PhysicalTrap(
        mass=CS133_MASS_AMU * ATOMIC_MASS_KG,
        omega=DEFAULT_TRAP_OMEGA,
        scattering_length=DEFAULT_SCATTERING_LENGTH_M,
        particle_count=particle_count,
    )


@dataclass(frozen=True)
class Table1Row:
    n: int
    gamma: float
    e_bar_tf_largen: float
    mu_oracle: float | None = None
    error: str | None = None


def table1(
    trap_base: PhysicalTrap,
    n_values: Sequence[int] = TABLE1_N_VALUES,
    include_oracle: bool = False,
    oracle_grid=None,
    oracle_flow=None,
) -> list[Table1Row]:
    """Benchmark table rows: per atom number, the coupling, the combined
    approximation Ebar, and optionally the reference chemical potential.

    Failures are recorded per row rather than aborting the table.
    """
    if len(n_values) == 0:
        raise DomainError("n_values must be nonempty")
    rows: list[Table1Row] = []
    for n in n_values:
        try:
            trap = replace(trap_base, particle_count=int(n))
            gamma = trap.gamma
            e_bar = solve_ebar_3d(gamma).e_bar
            mu = None
            if include_oracle:
                from . import oracle  # deferred: pulls in the compiled flow kernel

                mu = oracle.gpe_ground_radial3d(
                    gamma, grid=oracle_grid, flow=oracle_flow
                ).energy
            rows.append(Table1Row(int(n), gamma, e_bar, mu))
        except Error as exc:
            rows.append(
                Table1Row(
                    int(n),
                    float("nan"),
                    float("nan"),
                    None,
                    f"{type(exc).__name__}: {exc}",
                )
            )
    return rows
