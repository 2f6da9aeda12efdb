"""One-dimensional trapped-condensate ground-state approximations.

Everything is expressed in trap units: lengths in oscillator lengths,
energies in hbar*omega, and a single dimensionless repulsive coupling
``lam`` multiplying the cubic nonlinearity.  The reported energy is the
nonlinear eigenvalue (the chemical potential), not the value of the energy
functional.

Methods:

* Gaussian variational estimate (valid at any coupling);
* Thomas-Fermi limit, which drops the kinetic term: E = lam * eps0 with
  eps0 = (1/2) (3/(2 sqrt(lam)))^(2/3);
* semiclassically corrected Thomas-Fermi: the kinetic remainder lives in a
  square well of depth eps0 with parabolic walls, and its lowest level
  eps1 follows from the phase-integral (quantization) condition, either in
  published closed form or by solving the condition numerically.

The closed form and the numeric quantization solution agree on scaling but
not on the coefficient: the published constant (pi/4)(sqrt(2)-1) is not
the asymptotic solution of the printed condition (which gives pi/8), so
the eps1 ratio numeric/closed tends to (3 + 2 sqrt(2))/4 ~ 1.457.  Both
routes are kept; see ``tf_wkb_closed`` and ``tf_wkb_numeric``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from . import numerics
from .errors import DomainError, Error, NoBracket, NoConvergence
from .largen import EnergyEstimate

__all__ = [
    "Gpe1DParams",
    "VariationalResult",
    "WkbForm",
    "TfWkbBreakdown",
    "SweepRow",
    "variational_delta",
    "tf_energy",
    "tf_density",
    "tf_wkb_closed",
    "tf_wkb_numeric",
    "wkb_action",
    "flat_well_potential",
    "sweep_methods",
    "METHOD_TAGS",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Gpe1DParams:
    """Dimensionless coupling of the 1D condensate (repulsive only)."""

    lam: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and self.lam >= 0.0):
            raise DomainError(f"coupling must be >= 0, got {self.lam}")


@dataclass(frozen=True)
class VariationalResult:
    """Optimal Gaussian width, its energy, and the stationarity residual."""

    delta0: float
    energy: float
    residual: float


class WkbForm(str, Enum):
    CLOSED = "closed_form"
    NUMERIC = "numeric_wkb"


@dataclass(frozen=True)
class TfWkbBreakdown:
    """Intermediate quantities of the corrected Thomas-Fermi energy.

    y_m and y0 are the inner and outer turning points of the remainder
    problem (y_m^2 = 2 eps0, y0^2 = 2 (eps0 + eps1));
    cos(theta0)^2 = eps0/(eps0 + eps1).
    """

    lam: float
    eps0: float
    eps1: float
    y_m: float
    y0: float
    theta0: float
    method: WkbForm


@dataclass(frozen=True)
class SweepRow:
    lam: float
    method: str
    energy: float
    error: str | None = None


def _stationarity(delta: float, lam: float) -> float:
    # d(energy)/d(delta) = -(this); zero at the optimal width.
    return 1.0 / (2.0 * delta**3) + lam / (_SQRT_2PI * delta * delta) - 0.5 * delta


def _gaussian_energy(delta: float, lam: float) -> float:
    return 0.25 * (1.0 / (delta * delta) + delta * delta) + lam / (_SQRT_2PI * delta)


def variational_delta(params: Gpe1DParams) -> VariationalResult:
    """Optimal Gaussian trial-state width and the resulting energy.

    The width solves 1/(2 d^3) + lam/(sqrt(2 pi) d^2) = d/2, whose unique
    positive root lies in [1e-3, max(2, 2 (2 lam / sqrt(2 pi))^(1/3))] for
    every lam >= 0 (the upper end follows from the large-coupling
    asymptote d -> (2 lam / sqrt(2 pi))^(1/3)).
    """
    lam = params.lam
    hi = max(2.0, 2.0 * (2.0 * lam / _SQRT_2PI) ** (1.0 / 3.0))
    delta0 = numerics.find_root_bracketed(
        lambda d: _stationarity(d, lam),
        1e-3,
        hi,
        numerics.Tolerance(abs_tol=1e-12, rel_tol=0.0, max_iterations=300),
    )
    return VariationalResult(
        delta0=delta0,
        energy=_gaussian_energy(delta0, lam),
        residual=abs(_stationarity(delta0, lam)),
    )


def _eps0(lam: float) -> float:
    return 0.5 * (3.0 / (2.0 * math.sqrt(lam))) ** (2.0 / 3.0)


def _require_positive_coupling(params: Gpe1DParams) -> float:
    if params.lam <= 0.0:
        raise DomainError(
            "the Thomas-Fermi limit is degenerate at zero coupling"
        )
    return params.lam


def tf_energy(params: Gpe1DParams) -> EnergyEstimate:
    """Thomas-Fermi chemical potential E = lam * eps0 (kinetic term dropped)."""
    lam = _require_positive_coupling(params)
    eps0 = _eps0(lam)
    value = lam * eps0
    return EnergyEstimate(
        method="tf",
        value=value,
        leading=value,
        correction=0.0,
        metadata={"eps0": eps0, "y_m": math.sqrt(2.0 * eps0)},
    )


def tf_density(params: Gpe1DParams, y) -> np.ndarray:
    """Thomas-Fermi density max(eps0 - y^2/2, 0) at rescaled positions y.

    Integrates to lam**-0.5 over the support [-y_m, y_m].
    """
    lam = _require_positive_coupling(params)
    eps0 = _eps0(lam)
    return np.maximum(eps0 - 0.5 * np.asarray(y, dtype=float) ** 2, 0.0)


def _breakdown(lam: float, eps0: float, eps1: float, form: WkbForm) -> TfWkbBreakdown:
    return TfWkbBreakdown(
        lam=lam,
        eps0=eps0,
        eps1=eps1,
        y_m=math.sqrt(2.0 * eps0),
        y0=math.sqrt(2.0 * (eps0 + eps1)),
        theta0=math.atan(math.sqrt(eps1 / eps0)),
        method=form,
    )


def tf_wkb_closed(params: Gpe1DParams) -> tuple[EnergyEstimate, TfWkbBreakdown]:
    """Corrected Thomas-Fermi energy in the published closed form.

    sqrt(eps1/eps0) = (pi/2)(sqrt(2)-1)(2/3)^(2/3) lam^(-2/3), so
    E = (1/2)(3/2)^(2/3) lam^(2/3) [1 + (pi^2/4)(sqrt(2)-1)^2 (2/3)^(4/3)
    lam^(-4/3)].
    """
    lam = _require_positive_coupling(params)
    eps0 = _eps0(lam)
    ratio = (
        0.5 * math.pi * (math.sqrt(2.0) - 1.0) * (2.0 / 3.0) ** (2.0 / 3.0)
        * lam ** (-2.0 / 3.0)
    )
    eps1 = eps0 * ratio * ratio
    estimate = EnergyEstimate(
        method="tf_wkb_closed",
        value=lam * (eps0 + eps1),
        leading=lam * eps0,
        correction=lam * eps1,
        metadata={"eps0": eps0, "eps1": eps1},
    )
    return estimate, _breakdown(lam, eps0, eps1, WkbForm.CLOSED)


def flat_well_potential(params: Gpe1DParams, y: float) -> float:
    """Remainder potential: eps0 inside the condensate, y^2/2 outside."""
    lam = _require_positive_coupling(params)
    eps0 = _eps0(lam)
    return eps0 if y * y <= 2.0 * eps0 else 0.5 * y * y


def wkb_action(
    params: Gpe1DParams,
    eps1: float,
    quad_tol: numerics.Tolerance | None = None,
) -> float:
    """Phase integral 2*lam*[int_0^{y_m} + int_{y_m}^{y0}] sqrt(2(eps1+eps0-V)).

    The flat-region integral has constant integrand sqrt(2 eps1) and equals
    2 sqrt(eps0*eps1); the outer integral has a sqrt(y0 - y) turning-point
    endpoint and is evaluated with the quadrature's substitution handling.
    The ground state satisfies wkb_action(params, eps1) = pi/2.
    """
    lam = _require_positive_coupling(params)
    if eps1 < 0.0:
        raise DomainError(f"eps1 must be >= 0, got {eps1}")
    eps0 = _eps0(lam)
    y_m = math.sqrt(2.0 * eps0)
    y0 = math.sqrt(2.0 * (eps0 + eps1))
    if quad_tol is None:
        quad_tol = numerics.Tolerance(
            abs_tol=min(1e-13, 2.5e-11 / lam), rel_tol=1e-13, max_iterations=60
        )
    total = 2.0 * (eps0 + eps1)

    def momentum_flat(y: float) -> float:
        return math.sqrt(max(2.0 * (eps1 + eps0 - flat_well_potential(params, y)), 0.0))

    def momentum_outer(y: float) -> float:
        return math.sqrt(max(total - y * y, 0.0))

    inner = numerics.integrate(momentum_flat, 0.0, y_m, quad_tol)
    outer = numerics.integrate(momentum_outer, y_m, y0, quad_tol, sqrt_singularity="upper")
    return 2.0 * lam * (inner + outer)


def tf_wkb_numeric(
    params: Gpe1DParams,
    quad_tol: numerics.Tolerance | None = None,
) -> tuple[EnergyEstimate, TfWkbBreakdown]:
    """Corrected Thomas-Fermi energy with eps1 from the quantization condition.

    Solves wkb_action(params, eps1) = pi/2 for eps1 in [0, eps0] by
    bracketed bisection (the action is monotone increasing in eps1).  For
    couplings below roughly 0.32 the root exceeds eps0 and the corrected
    approximation is outside its regime; that raises NoConvergence.
    """
    lam = _require_positive_coupling(params)
    eps0 = _eps0(lam)
    target = 0.5 * math.pi

    def gap(e1: float) -> float:
        return wkb_action(params, e1, quad_tol) - target

    try:
        eps1 = numerics.find_root_bracketed(
            gap,
            0.0,
            eps0,
            numerics.Tolerance(
                abs_tol=max(float(np.spacing(eps0)), 1e-18),
                rel_tol=0.0,
                max_iterations=300,
            ),
        )
    except NoBracket as exc:
        raise NoConvergence(
            f"no quantization root with eps1 <= eps0 at coupling {lam}; "
            "the corrected Thomas-Fermi approximation needs a larger coupling"
        ) from exc
    residual = abs(gap(eps1))
    estimate = EnergyEstimate(
        method="tf_wkb_numeric",
        value=lam * (eps0 + eps1),
        leading=lam * eps0,
        correction=lam * eps1,
        metadata={"eps0": eps0, "eps1": eps1, "quantization_residual": residual},
    )
    return estimate, _breakdown(lam, eps0, eps1, WkbForm.NUMERIC)


#: Canonical method tags, in presentation order.
METHOD_TAGS = ("tf", "variational", "tf_wkb_closed", "tf_wkb_numeric", "exact")


def _evaluate_method(lam: float, method: str, grid, flow) -> float:
    params = Gpe1DParams(lam)
    if method == "tf":
        return tf_energy(params).value
    if method == "variational":
        return variational_delta(params).energy
    if method == "tf_wkb_closed":
        return tf_wkb_closed(params)[0].value
    if method == "tf_wkb_numeric":
        return tf_wkb_numeric(params)[0].value
    if method == "exact":
        from . import oracle  # deferred: pulls in the compiled flow kernel

        return oracle.gpe_ground_1d(lam, grid=grid, flow=flow).energy
    raise DomainError(f"unknown method tag: {method!r}")


def sweep_methods(
    lambdas: Sequence[float],
    methods: Iterable[str],
    grid=None,
    flow=None,
) -> list[SweepRow]:
    """Energy of each requested method at each coupling, row per pair.

    Rows keep the input ordering (for an unordered set of methods the
    canonical METHOD_TAGS order is used).  A method failure at one coupling
    is recorded in that row's ``error`` field instead of aborting the sweep.
    ``grid``/``flow`` override the oracle defaults for "exact" rows.
    """
    if isinstance(methods, (set, frozenset)):
        method_list = [m for m in METHOD_TAGS if m in methods]
        unknown = set(methods) - set(method_list)
    else:
        method_list = list(methods)
        unknown = set(method_list) - set(METHOD_TAGS)
    if unknown:
        raise DomainError(f"unknown method tags: {sorted(unknown)}")
    rows: list[SweepRow] = []
    for lam in lambdas:
        lam = float(lam)
        for method in method_list:
            try:
                energy = _evaluate_method(lam, method, grid, flow)
            except Error as exc:
                rows.append(
                    SweepRow(lam, method, float("nan"), f"{type(exc).__name__}: {exc}")
                )
            else:
                rows.append(SweepRow(lam, method, energy))
    return rows
