import math

import numpy as np
import pytest

from tflargen.constants import ATOMIC_MASS_KG
from tflargen.errors import DomainError
from tflargen.gpend import (
    TABLE1_N_VALUES,
    PhysicalTrap,
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

GAMMA_200 = 0.21764739493854288     # 200 * 3 nm / a_osc for the Cs-133 trap
A_OSC = 2.7567524994701733e-06

# Benchmark column (energies in hbar*omega) reproduced by solve_ebar_3d.
TABLE_EBAR = [1.774, 2.046, 2.245, 2.62, 3.159, 3.571, 3.914, 4.214,
              4.483, 4.727, 4.954, 5.165, 5.363]


class TestPhysicalTrap:
    def test_cs133_derived_quantities(self):
        trap = cs133_trap(200)
        assert trap.a_osc == pytest.approx(A_OSC, rel=1e-12)
        assert trap.gamma == pytest.approx(GAMMA_200, rel=1e-12)
        assert gamma_from_physical(trap) == trap.gamma

    def test_single_atom(self):
        assert cs133_trap(1).gamma == pytest.approx(1.0882369746927144e-3, rel=1e-12)

    def test_gamma_linear_in_n(self):
        assert cs133_trap(400).gamma == 2.0 * cs133_trap(200).gamma

    def test_validation(self):
        with pytest.raises(DomainError):
            cs133_trap(0)
        with pytest.raises(DomainError):
            PhysicalTrap(mass=-1.0, omega=1.0, scattering_length=1e-9, particle_count=1)
        with pytest.raises(DomainError):
            PhysicalTrap(mass=1e-25, omega=0.0, scattering_length=1e-9, particle_count=1)

    def test_gamma_consistent_with_fields(self):
        trap = PhysicalTrap(
            mass=87.0 * ATOMIC_MASS_KG,
            omega=2.0 * math.pi * 100.0,
            scattering_length=5.3e-9,
            particle_count=1234,
        )
        recomputed = (
            trap.particle_count
            * trap.scattering_length
            / math.sqrt(1.054571817e-34 / (trap.mass * trap.omega))
        )
        assert trap.gamma == pytest.approx(recomputed, rel=1e-12)


class TestTurningPoints:
    def test_degenerate(self):
        r1, r2 = turning_points(0.5)
        assert r1 == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-15)
        assert r2 == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-15)

    def test_exact_dyadic_case(self):
        # eps = 5/8: discriminant 9/64 is an exact square, so r1^2 = 1/4 and
        # r2^2 = 1 hold exactly in floating point.
        r1, r2 = turning_points(0.625)
        assert r2 == 1.0
        assert r1 == 0.5

    def test_table_row_case(self):
        r1, r2 = turning_points(0.59133)
        assert r1 == pytest.approx(0.5249977044988235, rel=1e-12)
        assert r2 == pytest.approx(0.9523851165736296, rel=1e-12)

    def test_root_identities_sampled(self):
        for eps in np.linspace(0.5, 50.0, 200):
            r1, r2 = turning_points(float(eps))
            assert r1 <= r2
            assert r1 * r2 == pytest.approx(0.5, abs=1e-10)
            assert r1 * r1 + r2 * r2 == pytest.approx(2.0 * eps, abs=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            turning_points(0.49)


class TestNormBracket:
    def test_degenerate_is_zero(self):
        for n in (2.5, 3.0, 4.0, 7.0):
            assert abs(norm_bracket(0.5, n)) < 1e-15

    def test_table_row_value(self):
        # 0.0139617... in exact arithmetic (frozen); quoted prints of
        # ~0.013963 carry the rounding of their 5-digit inputs.
        value = norm_bracket(0.59133, 3.0)
        assert value == pytest.approx(0.013963, abs=2e-6)
        assert value == pytest.approx(0.01396174027222398, rel=1e-12)
        assert 3.0**2.5 * value == pytest.approx(0.217642, abs=1e-6)

    def test_monotone_in_eps(self):
        eps = np.linspace(0.5001, 10.0, 300)
        vals = np.array([norm_bracket(float(e), 3.0) for e in eps])
        assert np.all(np.diff(vals) > 0.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            norm_bracket(1.0, 2.0)
        with pytest.raises(DomainError):
            norm_bracket(0.4, 3.0)


class TestSolveGeneral:
    def test_noninteracting(self):
        for n in (2.5, 3.0, 6.0):
            sol = solve_eps_general(n, 0.0)
            assert sol.eps == 0.5
            assert sol.e_bar == 0.5 * n

    def test_matches_3d_closed_form(self):
        gamma = 0.217648
        general = solve_eps_general(3.0, 4.0 * math.pi * gamma)
        closed = solve_ebar_3d(gamma)
        assert 3.0 * general.eps == pytest.approx(closed.e_bar, abs=1e-9)
        assert general.e_bar == pytest.approx(1.774, abs=1e-3)

    def test_residual_contract(self):
        for gamma_nd in (0.01, 1.0, 4.0 * math.pi * 0.217648, 300.0):
            sol = solve_eps_general(3.0, gamma_nd)
            assert sol.residual < 1e-10
            assert abs(gamma_nd_of_eps(sol.eps, 3.0) - gamma_nd) < 1e-10

    def test_fractional_dimension(self):
        sol = solve_eps_general(2.5, solid_angle(2.5) * 1.0)
        assert math.isfinite(sol.e_bar)
        assert sol.e_bar > 1.25

    def test_domain(self):
        with pytest.raises(DomainError):
            solve_eps_general(2.0, 1.0)
        with pytest.raises(DomainError):
            solve_eps_general(3.0, -1.0)

    def test_solid_angle(self):
        assert solid_angle(3.0) == pytest.approx(4.0 * math.pi, rel=1e-14)
        assert solid_angle(2.0) == pytest.approx(2.0 * math.pi, rel=1e-14)


class TestSolve3D:
    def test_noninteracting(self):
        sol = solve_ebar_3d(0.0)
        assert sol.e_bar == 1.5
        assert sol.eps == 0.5

    def test_table_anchor_rows(self):
        assert solve_ebar_3d(0.217648).e_bar == pytest.approx(
            1.7739948236544063, abs=1e-11
        )
        assert solve_ebar_3d(21.7648).e_bar == pytest.approx(
            5.360023631492827, abs=1e-10
        )

    def test_condition_residual(self):
        for gamma in np.geomspace(1e-3, 30.0, 12):
            sol = solve_ebar_3d(float(gamma))
            assert abs(gamma_of_ebar_3d(sol.e_bar) - gamma) < 1e-10

    def test_monotone_in_gamma(self):
        gammas = np.geomspace(1e-3, 100.0, 40)
        values = [solve_ebar_3d(float(g)).e_bar for g in gammas]
        assert np.all(np.diff(values) >= 0.0)

    def test_reduction_identity_log_grid(self):
        for gamma in np.geomspace(1e-3, 30.0, 25):
            general = solve_eps_general(3.0, 4.0 * math.pi * float(gamma))
            closed = solve_ebar_3d(float(gamma))
            assert abs(3.0 * general.eps - closed.e_bar) < 1e-9

    def test_large_gamma_power_law(self):
        # dominant balance gives Ebar ~ gamma^(2/5) at strong coupling
        ratio = solve_ebar_3d(1e4).e_bar / solve_ebar_3d(1e3).e_bar
        assert abs(ratio - 10.0**0.4) / 10.0**0.4 < 0.02

    def test_density_nonnegative_between_turning_points(self):
        for gamma in (0.2, 2.0, 20.0):
            sol = solve_ebar_3d(gamma)
            radii = np.linspace(sol.r1, sol.r2, 1000)
            density = sol.eps - 0.5 * radii**2 - 1.0 / (8.0 * radii**2)
            assert np.all(density >= -1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            solve_ebar_3d(-0.1)


class TestTable1:
    def test_benchmark_column(self):
        rows = table1(cs133_trap(), TABLE1_N_VALUES)
        assert len(rows) == 13
        for row, expected in zip(rows, TABLE_EBAR):
            assert row.error is None
            assert row.mu_oracle is None
            assert abs(round(row.e_bar_tf_largen, 3) - expected) <= 0.005 + 1e-12

    def test_gamma_column(self):
        rows = table1(cs133_trap(), (200, 400))
        assert rows[0].gamma == pytest.approx(GAMMA_200, rel=1e-12)
        assert rows[1].gamma == pytest.approx(2.0 * GAMMA_200, rel=1e-12)

    def test_rows_match_solver(self):
        rows = table1(cs133_trap(), (600, 6000))
        for row in rows:
            assert row.e_bar_tf_largen == solve_ebar_3d(row.gamma).e_bar

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            table1(cs133_trap(), ())
