"""Scalar numerics used by every other module.

Bracketed root finding, unimodal 1D minimization, adaptive Simpson
quadrature, and the lowest eigenpair of a symmetric tridiagonal matrix.
All routines are pure functions of their inputs: identical inputs give
bitwise-identical outputs, and nothing is cached between calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import DimensionMismatch, DomainError, NoBracket, NoConvergence

__all__ = [
    "Tolerance",
    "Grid1D",
    "GridFunction",
    "find_root_bracketed",
    "minimize_scalar",
    "integrate",
    "lowest_eigenpair_tridiag",
]


@dataclass(frozen=True)
class Tolerance:
    """Convergence targets for the iterative routines.

    ``max_iterations`` counts root/minimizer iterations; for the adaptive
    quadrature it is the maximum number of interval-bisection levels.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_iterations: int = 200

    def __post_init__(self) -> None:
        if not self.abs_tol > 0.0:
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.rel_tol < 0.0:
            raise DomainError(f"rel_tol must be nonnegative, got {self.rel_tol}")
        if self.max_iterations <= 0:
            raise DomainError(f"max_iterations must be positive, got {self.max_iterations}")


#: Default tolerance for root finding and minimization.
DEFAULT_TOL = Tolerance()
#: Default tolerance for quadrature (60 adaptive bisection levels).
QUAD_TOL = Tolerance(max_iterations=60)


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of ``n_points`` samples covering [x_min, x_max]."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise DomainError("grid endpoints must be finite")
        if not self.x_min < self.x_max:
            raise DomainError(f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_points < 3:
            raise DomainError(f"need at least 3 grid points, got {self.n_points}")

    @property
    def h(self) -> float:
        """Grid spacing (x_max - x_min) / (n_points - 1)."""
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def refined(self) -> "Grid1D":
        """Same endpoints, half the spacing (for Richardson extrapolation)."""
        return Grid1D(self.x_min, self.x_max, 2 * self.n_points - 1)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real-valued samples of a function on a uniform grid."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.n_points,):
            raise DimensionMismatch(
                f"expected {self.grid.n_points} values, got shape {v.shape}"
            )
        object.__setattr__(self, "values", v)

    def norm_squared(self) -> float:
        """Trapezoid-rule integral of values**2 over the grid."""
        return float(np.trapezoid(self.values**2, dx=self.grid.h))


def _bracket_floor(lo: float, hi: float) -> float:
    # Width below which a bracket cannot shrink in double precision.
    return 4.0 * np.spacing(max(abs(lo), abs(hi), 1e-300))


def find_root_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
    return_bracket: bool = False,
):
    """Root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign.

    Bisection with secant acceleration: secant iterates are accepted only
    strictly inside the current bracket and every other step bisects, so the
    bracket provably halves at least once per two iterations.  Terminates
    when the bracket width is at most ``tol.abs_tol`` (or a few ulp when
    abs_tol is below floating-point resolution at the root).

    Returns the endpoint of the final bracket with the smaller residual,
    or ``(x, (lo, hi))`` when ``return_bracket`` is set.
    """
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    fl, fh = float(f(lo)), float(f(hi))
    if not (math.isfinite(fl) and math.isfinite(fh)):
        raise NoConvergence("non-finite function value at a bracket endpoint")
    if fl == 0.0:
        return (lo, (lo, lo)) if return_bracket else lo
    if fh == 0.0:
        return (hi, (hi, hi)) if return_bracket else hi
    if (fl > 0.0) == (fh > 0.0):
        raise NoBracket(f"f({lo:g})={fl:g} and f({hi:g})={fh:g} have the same sign")

    use_secant = False
    for _ in range(tol.max_iterations):
        if hi - lo <= tol.abs_tol:
            break
        x = 0.5 * (lo + hi)
        if use_secant and fh != fl:
            x_sec = hi - fh * (hi - lo) / (fh - fl)
            if lo < x_sec < hi:
                x = x_sec
        use_secant = not use_secant
        if x <= lo or x >= hi:  # bracket at floating-point resolution
            break
        fx = float(f(x))
        if not math.isfinite(fx):
            raise NoConvergence(f"non-finite function value at x={x!r}")
        if fx == 0.0:
            lo = hi = x
            fl = fh = 0.0
            break
        if (fx > 0.0) == (fl > 0.0):
            lo, fl = x, fx
        else:
            hi, fh = x, fx

    width = hi - lo
    if width > tol.abs_tol and width > _bracket_floor(lo, hi):
        raise NoConvergence(
            f"bracket width {width:g} did not reach {tol.abs_tol:g} "
            f"in {tol.max_iterations} iterations"
        )
    x = lo if abs(fl) <= abs(fh) else hi
    return (x, (lo, hi)) if return_bracket else x


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def minimize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[float, float]:
    """Minimizer and minimum of a unimodal f on [lo, hi].

    Golden-section search narrows the bracket, then two parabolic-vertex
    refinements locate the minimizer; pure interval shrinking stalls on the
    O(sqrt(eps)) plateau where f is flat to machine precision, while the
    vertex of a fitted parabola is insensitive to it.
    """
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = float(f(c)), float(f(d))
    scale = max(1.0, abs(lo), abs(hi))
    stop = max(tol.abs_tol, 1e-5 * scale)
    iterations = 0
    while (b - a) > stop:
        if iterations >= tol.max_iterations:
            raise NoConvergence(
                f"golden section: width {b - a:g} after {tol.max_iterations} iterations"
            )
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = float(f(c))
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = float(f(d))
        iterations += 1
    if fc <= fd:
        x, fx = c, fc
    else:
        x, fx = d, fd

    for w in (1e-5 * scale, 1e-6 * scale):
        xl, xr = x - w, x + w
        if xl <= lo or xr >= hi:
            continue
        fl, fr = float(f(xl)), float(f(xr))
        denom = fl + fr - 2.0 * fx
        if not math.isfinite(denom) or denom <= 0.0:
            continue  # not locally convex at this resolution; keep current x
        step = 0.5 * w * (fl - fr) / denom
        step = max(-w, min(w, step))
        xn = x + step
        fn = float(f(xn))
        if fn <= fx + 1e-12 * (1.0 + abs(fx)):
            x, fx = xn, fn
    return x, fx


def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width * (fa + 4.0 * fm + fb) / 6.0


def _adaptive(f, a, b, fa, fm, fb, whole, eps, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = float(f(lm)), float(f(rm))
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    delta = left + right - whole
    if not math.isfinite(delta):
        raise NoConvergence(f"non-finite integrand on [{a:g}, {b:g}]")
    if abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    if depth <= 0:
        raise NoConvergence(f"adaptive Simpson depth exhausted on [{a:g}, {b:g}]")
    return _adaptive(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) + _adaptive(
        f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1
    )


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerance = QUAD_TOL,
    sqrt_singularity: str | None = None,
) -> float:
    """Definite integral of f over [a, b] by adaptive Simpson quadrature.

    ``sqrt_singularity`` may be ``"upper"`` or ``"lower"`` to declare that
    the integrand behaves like sqrt(b - y) (resp. sqrt(y - a)) near that
    endpoint, as the classically allowed momentum does at a turning point.
    The substitution y = b - t**2 (resp. y = a + t**2) then removes the
    endpoint derivative singularity exactly before the adaptive pass.
    Without the flag such integrands still converge, at a cost of roughly
    2*log2(1/abs_tol) bisection levels near the endpoint.
    """
    a, b = float(a), float(b)
    if a == b:
        return 0.0
    if a > b:
        raise DomainError(f"need a <= b, got [{a}, {b}]")
    if sqrt_singularity == "upper":
        g = lambda t: 2.0 * t * f(b - t * t)
        return _integrate_plain(g, 0.0, math.sqrt(b - a), tol)
    if sqrt_singularity == "lower":
        g = lambda t: 2.0 * t * f(a + t * t)
        return _integrate_plain(g, 0.0, math.sqrt(b - a), tol)
    if sqrt_singularity is not None:
        raise DomainError(f"unknown sqrt_singularity: {sqrt_singularity!r}")
    return _integrate_plain(f, a, b, tol)


def _integrate_plain(f, a, b, tol):
    fa, fm, fb = float(f(a)), float(f(0.5 * (a + b))), float(f(b))
    if not (math.isfinite(fa) and math.isfinite(fm) and math.isfinite(fb)):
        raise NoConvergence("non-finite integrand at an initial evaluation point")
    whole = _simpson(fa, fm, fb, b - a)
    eps = max(tol.abs_tol, tol.rel_tol * abs(whole))
    return _adaptive(f, a, b, fa, fm, fb, whole, eps, tol.max_iterations)


def lowest_eigenpair_tridiag(
    diag: Sequence[float],
    off_diag: Sequence[float],
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue and unit eigenvector of a symmetric tridiagonal
    matrix.

    Backed by LAPACK's Sturm-sequence bisection (stebz) and inverse
    iteration (stein) through scipy.linalg.eigh_tridiagonal.  The bisection
    runs to machine accuracy, which satisfies any meaningful ``abs_tol``.
    The eigenvector has unit Euclidean norm and a deterministic sign: its
    first nonzero component is positive.
    """
    d = np.asarray(diag, dtype=float)
    e = np.asarray(off_diag, dtype=float)
    if d.ndim != 1 or e.ndim != 1:
        raise DimensionMismatch("diag and off_diag must be one-dimensional")
    if d.size == 0:
        raise DimensionMismatch("empty diagonal")
    if e.size != d.size - 1:
        raise DimensionMismatch(
            f"off_diag length {e.size} != diag length {d.size} - 1"
        )
    if d.size == 1:
        return float(d[0]), np.ones(1)
    try:
        w, v = eigh_tridiagonal(d, e, select="i", select_range=(0, 0), tol=0.0)
    except (LinAlgError, ValueError) as exc:
        raise NoConvergence(f"tridiagonal eigensolve failed: {exc}") from exc
    vec = v[:, 0]
    vec = vec / np.linalg.norm(vec)
    nonzero = np.nonzero(vec)[0]
    if nonzero.size and vec[nonzero[0]] < 0.0:
        vec = -vec
    return float(w[0]), vec
