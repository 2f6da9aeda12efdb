import math

import numpy as np
import pytest

from tflargen.errors import DimensionMismatch, DomainError, NoBracket, NoConvergence
from tflargen.numerics import (
    Grid1D,
    GridFunction,
    Tolerance,
    find_root_bracketed,
    integrate,
    lowest_eigenpair_tridiag,
    minimize_scalar,
)

TIGHT = Tolerance(abs_tol=1e-12, rel_tol=0.0, max_iterations=300)


class TestTypes:
    def test_tolerance_validation(self):
        with pytest.raises(DomainError):
            Tolerance(abs_tol=0.0)
        with pytest.raises(DomainError):
            Tolerance(rel_tol=-1.0)
        with pytest.raises(DomainError):
            Tolerance(max_iterations=0)

    def test_grid_basics(self):
        grid = Grid1D(-1.0, 1.0, 5)
        assert grid.h == pytest.approx(0.5)
        pts = grid.points()
        assert pts[0] == -1.0 and pts[-1] == 1.0
        assert np.allclose(np.diff(pts), grid.h)
        fine = grid.refined()
        assert fine.n_points == 9 and fine.h == pytest.approx(grid.h / 2)

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            Grid1D(1.0, 1.0, 5)
        with pytest.raises(DomainError):
            Grid1D(0.0, 1.0, 2)

    def test_grid_function(self):
        grid = Grid1D(0.0, 1.0, 11)
        gf = GridFunction(grid, np.ones(11))
        assert gf.norm_squared() == pytest.approx(1.0)
        with pytest.raises(DimensionMismatch):
            GridFunction(grid, np.ones(10))


class TestFindRoot:
    def test_sqrt2(self):
        x = find_root_bracketed(lambda x: x * x - 2.0, 1.0, 2.0, TIGHT)
        assert x == pytest.approx(math.sqrt(2.0), abs=1e-12)

    def test_odd_function(self):
        assert find_root_bracketed(lambda x: x, -1.0, 1.0, TIGHT) == 0.0

    def test_cube_root_scale(self):
        # Independent oracle: the closed-form cube root of 2/sqrt(2*pi).
        target = (2.0 / math.sqrt(2.0 * math.pi)) ** (1.0 / 3.0)
        assert target == pytest.approx(0.9274987945157124, abs=1e-15)
        x = find_root_bracketed(
            lambda x: x**3 - 2.0 / math.sqrt(2.0 * math.pi), 0.5, 2.0, TIGHT
        )
        assert x == pytest.approx(target, abs=1e-12)

    def test_final_bracket_postcondition(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            root = rng.uniform(-3.0, 3.0)
            scale = rng.uniform(0.2, 5.0)
            f = lambda x, r=root, s=scale: s * (x - r) ** 3 + 0.1 * s * (x - r)
            x, (lo, hi) = find_root_bracketed(
                f, root - 2.0, root + 3.0, TIGHT, return_bracket=True
            )
            assert lo <= x <= hi
            assert hi - lo <= TIGHT.abs_tol
            assert f(lo) * f(hi) <= 0.0

    def test_endpoint_root(self):
        assert find_root_bracketed(lambda x: x - 1.0, 1.0, 2.0) == 1.0
        assert find_root_bracketed(lambda x: x - 2.0, 1.0, 2.0) == 2.0

    def test_no_bracket(self):
        with pytest.raises(NoBracket):
            find_root_bracketed(lambda x: x * x + 1.0, -1.0, 1.0)

    def test_no_convergence(self):
        tol = Tolerance(abs_tol=1e-14, rel_tol=0.0, max_iterations=3)
        with pytest.raises(NoConvergence):
            find_root_bracketed(lambda x: x - 0.1234, -10.0, 10.0, tol)

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            find_root_bracketed(lambda x: x, 1.0, -1.0)

    def test_pure(self):
        f = lambda x: math.cos(x) - x
        a = find_root_bracketed(f, 0.0, 1.0, TIGHT)
        b = find_root_bracketed(f, 0.0, 1.0, TIGHT)
        assert a == b


class TestMinimize:
    def test_parabola(self):
        x, fx = minimize_scalar(lambda x: (x - 3.0) ** 2, 0.0, 10.0, TIGHT)
        assert x == pytest.approx(3.0, abs=1e-9)
        assert fx == pytest.approx(0.0, abs=1e-15)

    def test_harmonic_effective_potential(self):
        f = lambda xi: 1.0 / (8.0 * xi * xi) + 0.5 * xi * xi
        x, fx = minimize_scalar(f, 0.1, 3.0, TIGHT)
        assert x == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-9)
        assert fx == pytest.approx(0.5, abs=1e-12)

    def test_quartic_effective_potential(self):
        f = lambda xi: 1.0 / (8.0 * xi * xi) + 0.25 * xi**4
        x, fx = minimize_scalar(f, 0.1, 3.0, TIGHT)
        assert x == pytest.approx(4.0 ** (-1.0 / 6.0), abs=1e-9)
        assert fx == pytest.approx((3.0 / 16.0) * 4.0 ** (1.0 / 3.0), abs=1e-12)

    def test_pure(self):
        f = lambda x: (x - 0.7) ** 4 + x
        assert minimize_scalar(f, -2.0, 2.0) == minimize_scalar(f, -2.0, 2.0)

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            minimize_scalar(lambda x: x * x, 2.0, -2.0)


class TestIntegrate:
    def test_monomial(self):
        assert integrate(lambda x: x * x, 0.0, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_quarter_circle(self):
        # Turning-point shape: int_0^sqrt(2) sqrt(2 - y^2) dy = pi/2.
        val = integrate(lambda y: math.sqrt(max(2.0 - y * y, 0.0)), 0.0, math.sqrt(2.0))
        assert val == pytest.approx(math.pi / 2.0, abs=5e-10)

    def test_sqrt_endpoint_plain(self):
        val = integrate(lambda x: math.sqrt(max(1.0 - x, 0.0)), 0.0, 1.0)
        assert val == pytest.approx(2.0 / 3.0, abs=5e-10)

    def test_sqrt_endpoint_substitution(self):
        tol = Tolerance(abs_tol=1e-13, rel_tol=1e-13, max_iterations=60)
        val = integrate(
            lambda y: math.sqrt(max(2.0 - y * y, 0.0)),
            0.0,
            math.sqrt(2.0),
            tol,
            sqrt_singularity="upper",
        )
        assert val == pytest.approx(math.pi / 2.0, abs=1e-12)
        val = integrate(
            lambda x: math.sqrt(max(x, 0.0)), 0.0, 1.0, tol, sqrt_singularity="lower"
        )
        assert val == pytest.approx(2.0 / 3.0, abs=1e-12)

    def test_cubic_exactness(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            coeffs = rng.uniform(-3.0, 3.0, size=4)
            a, b = sorted(rng.uniform(-5.0, 5.0, size=2))
            if b - a < 1e-3:
                continue
            poly = np.polynomial.Polynomial(coeffs)
            exact = poly.integ()(b) - poly.integ()(a)
            assert integrate(poly, a, b) == pytest.approx(exact, abs=1e-10)

    def test_linearity(self):
        rng = np.random.default_rng(3)
        tol = Tolerance(abs_tol=1e-10, rel_tol=0.0, max_iterations=60)
        for _ in range(10):
            f = np.polynomial.Polynomial(rng.uniform(-2.0, 2.0, size=5))
            g = np.polynomial.Polynomial(rng.uniform(-2.0, 2.0, size=5))
            alpha, beta = rng.uniform(-2.0, 2.0, size=2)
            combined = integrate(lambda x: alpha * f(x) + beta * g(x), -1.0, 2.0, tol)
            split = alpha * integrate(f, -1.0, 2.0, tol) + beta * integrate(g, -1.0, 2.0, tol)
            assert combined == pytest.approx(split, abs=2e-10)

    def test_empty_and_reversed(self):
        assert integrate(lambda x: x, 1.0, 1.0) == 0.0
        with pytest.raises(DomainError):
            integrate(lambda x: x, 2.0, 1.0)

    def test_nonfinite_integrand(self):
        with pytest.raises(NoConvergence):
            integrate(lambda x: 1.0 / math.sqrt(x) if x > 0 else math.inf, 0.0, 1.0)

    def test_depth_exhaustion(self):
        shallow = Tolerance(abs_tol=1e-14, rel_tol=0.0, max_iterations=3)
        with pytest.raises(NoConvergence):
            integrate(lambda x: math.sqrt(max(1.0 - x, 0.0)), 0.0, 1.0, shallow)

    def test_pure(self):
        f = lambda x: math.exp(-x * x)
        assert integrate(f, 0.0, 2.0) == integrate(f, 0.0, 2.0)


class TestLowestEigenpair:
    def test_known_3x3(self):
        val, vec = lowest_eigenpair_tridiag([2.0, 2.0, 2.0], [-1.0, -1.0])
        assert val == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-12)
        assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-12)

    def test_single_entry(self):
        val, vec = lowest_eigenpair_tridiag([5.0], [])
        assert val == 5.0
        assert vec.tolist() == [1.0]

    def test_sign_convention(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            n = rng.integers(2, 40)
            d = rng.uniform(-1.0, 3.0, size=n)
            e = rng.uniform(-2.0, 2.0, size=n - 1)
            _, vec = lowest_eigenpair_tridiag(d, e)
            nonzero = np.nonzero(vec)[0]
            assert vec[nonzero[0]] > 0.0

    def test_residual_and_value_against_dense(self):
        rng = np.random.default_rng(19)
        tol = Tolerance()
        for _ in range(15):
            n = int(rng.integers(2, 60))
            d = rng.uniform(-2.0, 4.0, size=n)
            e = rng.uniform(-2.0, 2.0, size=n - 1)
            val, vec = lowest_eigenpair_tridiag(d, e, tol)
            T = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
            # independent oracle: dense symmetric eigensolver
            assert val == pytest.approx(np.linalg.eigvalsh(T)[0], abs=1e-10)
            norm_T = np.max(np.sum(np.abs(T), axis=1))
            assert np.linalg.norm(T @ vec - val * vec) <= 10.0 * tol.abs_tol * norm_T

    def test_discretized_harmonic_oscillator(self):
        # FD matrix for -(1/2) psi'' + x^2/2 on [-10, 10]: lowest eigenvalue
        # near 0.5, checked against a dense solve at modest size.
        grid = Grid1D(-10.0, 10.0, 201)
        x = grid.points()[1:-1]
        h = grid.h
        d = 1.0 / h**2 + 0.5 * x * x
        e = np.full(x.size - 1, -0.5 / h**2)
        val, _ = lowest_eigenpair_tridiag(d, e)
        assert val == pytest.approx(0.5, abs=1e-3)
        T = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        assert val == pytest.approx(np.linalg.eigvalsh(T)[0], abs=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            lowest_eigenpair_tridiag([1.0, 2.0], [0.5, 0.5])
        with pytest.raises(DimensionMismatch):
            lowest_eigenpair_tridiag([], [])

    def test_pure(self):
        d = [1.0, 2.0, 3.0, 4.0]
        e = [-0.5, 0.25, -0.125]
        v1, w1 = lowest_eigenpair_tridiag(d, e)
        v2, w2 = lowest_eigenpair_tridiag(d, e)
        assert v1 == v2
        assert np.array_equal(w1, w2)
