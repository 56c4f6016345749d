import math

import numpy as np
import pytest

from kgheun import (
    GridTooCoarse,
    ModelConfig,
    build_wavefunction,
    count_nodes,
    ground_state_coulomb,
    ground_state_linear,
    polynomial_nodes,
    radial_profile,
    solve_frequency,
)
from kgheun.wavefunction import state_scale, state_series


def coulomb_gs(f=0.2, l=1, m=1.0):
    return ground_state_coulomb(ModelConfig(mass=m, coulomb_f=f, angular_l=l))


def radial_ode_residual(state, rho, R):
    """Centered-difference residual of the radial equation in rho."""
    cfg = state.config
    m, f, nu = cfg.mass, cfg.coulomb_f, cfg.linear_nu
    gamma2 = cfg.angular_l**2 - f**2
    E, w = state.energy, state.omega
    beta = E**2 - m**2 + m * w
    theta2 = (m * w) ** 2 + nu**2
    h = rho[1] - rho[0]
    d2 = (R[2:] - 2 * R[1:-1] + R[:-2]) / h**2
    d1 = (R[2:] - R[:-2]) / (2 * h)
    r = rho[1:-1]
    Rc = R[1:-1]
    return (
        d2
        + d1 / r
        - gamma2 / r**2 * Rc
        + 2.0 * E * f / r * Rc
        - 2.0 * m * nu * r * Rc
        - theta2 * r**2 * Rc
        + beta * Rc
    )


class TestBuildWavefunction:
    def test_normalized_planar_measure(self):
        w = build_wavefunction(coulomb_gs())
        norm = 2.0 * math.pi * np.trapezoid(w.values**2 * w.rho, w.rho)
        assert norm == pytest.approx(1.0, abs=1e-8)

    def test_zero_at_origin_for_positive_gamma(self):
        w = build_wavefunction(coulomb_gs())
        assert w.values[0] == 0.0

    def test_ground_state_shape(self):
        # R(r) = e^{-r^2/2} r^|gamma| (1 + a1 r) in the scaled coordinate
        state = coulomb_gs()
        series = state_series(state)
        a1 = series.coefficients[1]
        scale = state_scale(state)
        rho = np.array([0.3, 1.0, 2.5])
        x = scale * rho
        gamma = state.config.gamma_abs
        expect = np.exp(-0.5 * x**2) * x**gamma * (1.0 + a1 * x)
        assert radial_profile(state, rho) == pytest.approx(expect, rel=1e-13)

    def test_grid_too_coarse(self):
        with pytest.raises(GridTooCoarse):
            build_wavefunction(coulomb_gs(), rho_max=500.0, grid_points=101)

    def test_grid_points_floor(self):
        with pytest.raises(ValueError):
            build_wavefunction(coulomb_gs(), grid_points=50)

    def test_normalization_stability(self):
        state = coulomb_gs()
        scale = state_scale(state)
        w1 = build_wavefunction(state, rho_max=10.0 / scale, grid_points=4001)
        w2 = build_wavefunction(state, rho_max=20.0 / scale, grid_points=8001)
        assert w2.norm_constant == pytest.approx(w1.norm_constant, rel=1e-10)

    def test_fd_residual_second_order(self):
        # centered-difference residual of the radial ODE drops ~4x when the
        # grid is refined 2x
        state = coulomb_gs()
        scale = state_scale(state)

        def max_resid(pts):
            w = build_wavefunction(state, rho_max=8.0 / scale, grid_points=pts)
            inner = slice(pts // 20, -pts // 20)
            res = radial_ode_residual(state, w.rho, w.values)
            return np.max(np.abs(res[inner]))

        ratio = max_resid(2001) / max_resid(4001)
        assert 3.0 < ratio < 5.0

    def test_fd_residual_linear_variant(self):
        state = ground_state_linear(
            ModelConfig(mass=1.0, coulomb_f=0.2, linear_nu=0.1, angular_l=1)
        )
        scale = state_scale(state)
        w = build_wavefunction(state, rho_max=8.0 / scale, grid_points=6001)
        res = radial_ode_residual(state, w.rho, w.values)
        inner = slice(len(w.rho) // 20, -len(w.rho) // 20)
        assert np.max(np.abs(res[inner])) < 1e-4 * np.max(np.abs(w.values))


class TestNodeCounting:
    def test_ground_state_one_node_when_inside_grid(self):
        # f > 0, E > 0: a1 < 0, root at x = -1/a1 well inside the grid
        state = coulomb_gs(f=0.2)
        w = build_wavefunction(state)
        assert count_nodes(w) == 1
        assert polynomial_nodes(state) == 1

    def test_repulsive_sign_zero_nodes(self):
        # f < 0, E > 0: a1 > 0, H strictly positive
        state = coulomb_gs(f=-0.2)
        w = build_wavefunction(state)
        assert count_nodes(w) == 0
        assert polynomial_nodes(state) == 0

    def test_node_count_bounded_by_degree(self):
        cfg = ModelConfig(mass=1.0, coulomb_f=0.3, angular_l=1)
        for n in range(1, 5):
            for state in solve_frequency(cfg, n, 50.0):
                w = build_wavefunction(state)
                assert count_nodes(w) <= n
                assert count_nodes(w) == polynomial_nodes(state)
