"""Numerically exact reference solvers.

Two families, both pure given their inputs:

* finite-difference Schrodinger ground states (1D and radial N-dimensional)
  on a uniform grid with Dirichlet boundaries, Richardson-extrapolated in
  the spacing: E = (4 E_{h/2} - E_h) / 3;
* ground states of the 1D and radial-3D cubic-nonlinearity trap equations
  by normalized imaginary-time flow (explicit Euler steps with explicit
  renormalization), whose fixed points are exact discrete eigenpairs.

Every approximation module in the package is validated against these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _flow
from .errors import Diverged, DomainError, GridTooNarrow, NoConvergence
from .numerics import DEFAULT_TOL, Grid1D, GridFunction, Tolerance, lowest_eigenpair_tridiag

__all__ = [
    "FlowParams",
    "OracleResult",
    "schrodinger_ground_1d",
    "schrodinger_ground_radial",
    "gpe_ground_1d",
    "gpe_ground_radial3d",
    "default_grid_1d",
    "default_grid_radial",
    "default_flow",
]

# Eigenfunction mass allowed within 5 points of a Dirichlet boundary before
# the grid is declared too narrow.
_EDGE_MASS_LIMIT = 1e-8
_EDGE_POINTS = 5


@dataclass(frozen=True)
class FlowParams:
    """Imaginary-time flow controls.

    The flow stops once successive sampled chemical potentials differ by
    less than ``mu_tol`` and the eigen-residual is below 10*mu_tol.
    """

    time_step: float
    max_steps: int = 2_000_000
    mu_tol: float = 1e-10

    def __post_init__(self) -> None:
        if not self.time_step > 0.0:
            raise DomainError(f"time_step must be positive, got {self.time_step}")
        if self.max_steps <= 0:
            raise DomainError(f"max_steps must be positive, got {self.max_steps}")
        if not self.mu_tol > 0.0:
            raise DomainError(f"mu_tol must be positive, got {self.mu_tol}")


@dataclass(frozen=True, eq=False)
class OracleResult:
    """A reference energy with its normalized wavefunction and provenance."""

    energy: float
    wavefunction: GridFunction
    grid: Grid1D
    converged: bool
    steps_or_gridpoints: int


def _eigenvalue_on(grid: Grid1D, v_interior: np.ndarray, tol: Tolerance):
    h = grid.h
    diag = 1.0 / (h * h) + v_interior
    off = np.full(v_interior.size - 1, -0.5 / (h * h))
    return lowest_eigenpair_tridiag(diag, off, tol)


def _edge_mass(vec: np.ndarray, sides: str = "both") -> float:
    k = min(_EDGE_POINTS, vec.size)
    mass = 0.0
    if sides in ("both", "left"):
        mass += float(np.sum(vec[:k] ** 2))
    if sides in ("both", "right"):
        mass += float(np.sum(vec[-k:] ** 2))
    return mass


def _richardson_ground(
    grid: Grid1D,
    v_of: Callable[[np.ndarray], np.ndarray],
    tol: Tolerance,
    guard_sides: str,
) -> OracleResult:
    fine = grid.refined()
    e_coarse, _ = _eigenvalue_on(grid, v_of(grid.points()[1:-1]), tol)
    e_fine, vec = _eigenvalue_on(fine, v_of(fine.points()[1:-1]), tol)
    if _edge_mass(vec, guard_sides) > _EDGE_MASS_LIMIT:
        raise GridTooNarrow(
            f"eigenfunction mass within {_EDGE_POINTS} points of the boundary "
            f"exceeds {_EDGE_MASS_LIMIT:g} on [{fine.x_min}, {fine.x_max}]"
        )
    energy = (4.0 * e_fine - e_coarse) / 3.0
    # Unit-Euclidean interior vector -> unit trapezoid norm on the full grid.
    psi = np.zeros(fine.n_points)
    psi[1:-1] = vec / math.sqrt(fine.h)
    return OracleResult(
        energy=energy,
        wavefunction=GridFunction(fine, psi),
        grid=fine,
        converged=True,
        steps_or_gridpoints=fine.n_points,
    )


def schrodinger_ground_1d(
    potential: Callable[[np.ndarray], np.ndarray],
    grid: Grid1D,
    tol: Tolerance = DEFAULT_TOL,
) -> OracleResult:
    """Lowest eigenvalue of -(1/2) psi'' + V psi = E psi on the grid.

    Second-order central differences with Dirichlet boundaries, solved at
    spacings h and h/2 and Richardson-extrapolated.  ``potential`` must
    accept an ndarray of positions.  Raises GridTooNarrow when the
    eigenfunction carries mass near either boundary.
    """
    return _richardson_ground(grid, lambda x: np.asarray(potential(x), dtype=float), tol, "both")


def schrodinger_ground_radial(
    dimension: int,
    potential: Callable[[np.ndarray], np.ndarray],
    grid: Grid1D,
    tol: Tolerance = DEFAULT_TOL,
) -> OracleResult:
    """Ground state of the reduced radial problem in ``dimension`` dimensions.

    The reduced wavefunction u = r^((N-1)/2) psi obeys
    -(1/2) u'' + [(N-1)(N-3)/(8 r^2) + V(r)] u = E u with u(0) = 0,
    discretized as in the 1D solver on (x_min, x_max], x_min > 0.  The
    near-origin Dirichlet node is exact up to the O(x_min) wall shift, so
    pick x_min well below the target accuracy.  The narrow-grid guard
    applies to the outer boundary only; at the origin u vanishes as a power
    by construction.

    ``dimension == 1`` has no centrifugal term and an even ground state
    (u'(0) = 0), handled by symmetric extension: the problem is mirrored
    onto [-x_max, x_max] and solved with the 1D solver; the result's grid
    is the mirrored one.
    """
    if dimension < 1:
        raise DomainError(f"dimension must be >= 1, got {dimension}")
    if dimension == 1:
        mirrored = Grid1D(-grid.x_max, grid.x_max, 2 * grid.n_points - 1)
        return schrodinger_ground_1d(
            lambda x: np.asarray(potential(np.abs(x)), dtype=float), mirrored, tol
        )
    if not grid.x_min > 0.0:
        raise DomainError(f"radial grid needs x_min > 0, got {grid.x_min}")
    coefficient = (dimension - 1) * (dimension - 3) / 8.0

    def v_of(r: np.ndarray) -> np.ndarray:
        v = np.asarray(potential(r), dtype=float)
        if coefficient != 0.0:
            v = v + coefficient / (r * r)
        return v

    return _richardson_ground(grid, v_of, tol, "right")


def default_grid_1d(lam: float) -> Grid1D:
    """[-L, L] with 4001 points, L from twice the Thomas-Fermi radius."""
    mu_estimate = 0.5 if lam <= 0.0 else max(0.5, 0.5 * 1.5 ** (2.0 / 3.0) * lam ** (2.0 / 3.0))
    half_width = max(8.0, 2.0 * math.sqrt(2.0 * mu_estimate))
    return Grid1D(-half_width, half_width, 4001)


def default_grid_radial(gamma: float) -> Grid1D:
    """(1e-4, L] with 4001 points, L from twice the Thomas-Fermi radius."""
    mu_estimate = 1.5 if gamma <= 0.0 else max(1.5, 0.5 * (15.0 * gamma) ** 0.4)
    outer = max(8.0, 2.0 * math.sqrt(2.0 * mu_estimate))
    return Grid1D(1e-4, outer, 4001)


def default_flow(grid: Grid1D) -> FlowParams:
    """Explicit-scheme stability default: time step 0.4 h^2."""
    return FlowParams(time_step=0.4 * grid.h * grid.h)


def _run_flow(
    phi0: np.ndarray,
    v: np.ndarray,
    w: np.ndarray,
    coupling: float,
    grid: Grid1D,
    flow: FlowParams,
) -> tuple[float, int]:
    tau = flow.time_step
    for attempt in range(2):
        phi = phi0.copy()
        mu, res, steps, status = _flow.flow_ground_state(
            phi,
            v,
            w,
            coupling,
            grid.h,
            tau,
            flow.mu_tol,
            10.0 * flow.mu_tol,
            flow.max_steps,
        )
        if status == _flow.STATUS_CONVERGED:
            phi0[:] = phi
            return mu, steps
        if status == _flow.STATUS_DIVERGED and attempt == 0:
            tau *= 0.5  # one retry at half the step before giving up
            continue
        if status == _flow.STATUS_DIVERGED:
            raise Diverged(
                f"flow diverged even at the halved time step {tau:g}"
            )
        raise NoConvergence(
            f"flow hit max_steps={flow.max_steps} with |residual|={res:g}"
        )
    raise Diverged("unreachable")  # pragma: no cover


def _normalized(phi: np.ndarray, h: float) -> np.ndarray:
    return phi / math.sqrt(np.trapezoid(phi * phi, dx=h))


def gpe_ground_1d(
    lam: float,
    grid: Grid1D | None = None,
    flow: FlowParams | None = None,
) -> OracleResult:
    """Ground state of -(1/2) phi'' + (x^2/2) phi + lam phi^3 = mu phi.

    Normalized imaginary-time flow from a unit Gaussian on a grid symmetric
    about 0; reports the chemical potential mu (interaction at full
    weight).  The wavefunction has unit trapezoid norm.
    """
    if lam < 0.0:
        raise DomainError(f"coupling must be >= 0, got {lam}")
    if grid is None:
        grid = default_grid_1d(lam)
    if abs(grid.x_min + grid.x_max) > 1e-12 * max(1.0, abs(grid.x_max)):
        raise DomainError("1D flow grid must be symmetric about 0")
    if flow is None:
        flow = default_flow(grid)
    x = grid.points()
    v = 0.5 * x * x
    w = np.ones_like(x)
    phi = _normalized(np.exp(-0.5 * x * x), grid.h)
    phi[0] = phi[-1] = 0.0
    mu, steps = _run_flow(phi, v, w, lam, grid, flow)
    return OracleResult(
        energy=mu,
        wavefunction=GridFunction(grid, phi),
        grid=grid,
        converged=True,
        steps_or_gridpoints=steps,
    )


def gpe_ground_radial3d(
    gamma: float,
    grid: Grid1D | None = None,
    flow: FlowParams | None = None,
) -> OracleResult:
    """Ground state of -(1/2) u'' + (r^2/2) u + gamma (u^2/r^2) u = mu u.

    The reduced 3D condensate equation for u = sqrt(4 pi) r psi with
    unit-norm u and gamma = n a / a_osc; solved by the same normalized
    imaginary-time flow from the noninteracting profile r exp(-r^2/2).
    """
    if gamma < 0.0:
        raise DomainError(f"coupling must be >= 0, got {gamma}")
    if grid is None:
        grid = default_grid_radial(gamma)
    if not grid.x_min > 0.0:
        raise DomainError(f"radial grid needs x_min > 0, got {grid.x_min}")
    if flow is None:
        flow = default_flow(grid)
    r = grid.points()
    v = 0.5 * r * r
    w = 1.0 / (r * r)
    phi = _normalized(r * np.exp(-0.5 * r * r), grid.h)
    phi[0] = phi[-1] = 0.0
    mu, steps = _run_flow(phi, v, w, gamma, grid, flow)
    return OracleResult(
        energy=mu,
        wavefunction=GridFunction(grid, phi),
        grid=grid,
        converged=True,
        steps_or_gridpoints=steps,
    )
