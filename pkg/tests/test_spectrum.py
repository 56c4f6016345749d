import math

import numpy as np
import pytest

from kgheun import (
    Branch,
    DegenerateCoupling,
    ModelConfig,
    SupercriticalCoupling,
    cubic_coefficients,
    energy_from_frequency,
    ground_state_coulomb,
    ground_state_linear,
    solve_frequency,
    solve_frequency_linear,
)


class TestEnergyFromFrequency:
    def test_small_omega_limit(self):
        cfg = ModelConfig(mass=1.0, coulomb_f=0.3, angular_l=1)
        assert energy_from_frequency(cfg, 1e-14, 1) == pytest.approx(1.0, rel=1e-12)
        neg = ModelConfig(mass=1.0, coulomb_f=0.3, angular_l=1, branch=Branch.NEGATIVE)
        assert energy_from_frequency(neg, 1e-14, 1) == pytest.approx(-1.0, rel=1e-12)

    def test_direct_substitution(self):
        # gamma = 1 exactly (f = 0, l = 1): E^2 = 1 + 1*(2 + 2 + 1) = 6
        cfg = ModelConfig(mass=1.0, coulomb_f=0.0, angular_l=1)
        assert energy_from_frequency(cfg, 1.0, 1) == pytest.approx(math.sqrt(6.0), rel=1e-15)

    def test_linear_relation_pinned(self):
        # frozen from an independent 50-digit evaluation
        cfg = ModelConfig(mass=1.0, coulomb_f=0.2, linear_nu=0.3, angular_l=1)
        assert energy_from_frequency(cfg, 0.7, 1) == pytest.approx(
            2.1641435897478407, rel=1e-14
        )


class TestGroundStateCoulomb:
    def test_pinned_values(self):
        gs = ground_state_coulomb(ModelConfig(mass=1.0, coulomb_f=0.2, angular_l=1))
        assert gs.energy == pytest.approx(1.0746238571867297, rel=1e-14)
        assert gs.omega == pytest.approx(0.031215559840047028, rel=1e-14)
        assert gs.n == 1 and gs.method == "closed_form"

    def test_f_sign_irrelevant(self):
        a = ground_state_coulomb(ModelConfig(mass=1.0, coulomb_f=0.2, angular_l=1))
        b = ground_state_coulomb(ModelConfig(mass=1.0, coulomb_f=-0.2, angular_l=1))
        assert a.omega == b.omega and a.energy == b.energy

    def test_weak_coupling_limit(self):
        gs = ground_state_coulomb(ModelConfig(mass=1.0, coulomb_f=1e-6, angular_l=1))
        assert gs.omega == pytest.approx(0.0, abs=1e-11)
        assert gs.energy == pytest.approx(1.0, rel=1e-11)

    def test_degenerate_f_zero(self):
        with pytest.raises(DegenerateCoupling):
            ground_state_coulomb(ModelConfig(mass=1.0, coulomb_f=0.0, angular_l=1))

    def test_supercritical(self):
        with pytest.raises(SupercriticalCoupling):
            ground_state_coulomb(ModelConfig(mass=1.0, coulomb_f=0.68, angular_l=1))

    def test_negative_branch(self):
        gs = ground_state_coulomb(
            ModelConfig(mass=1.0, coulomb_f=0.2, angular_l=1, branch=Branch.NEGATIVE)
        )
        pos = ground_state_coulomb(ModelConfig(mass=1.0, coulomb_f=0.2, angular_l=1))
        assert gs.energy == -pos.energy
        assert gs.omega == pos.omega


class TestSolveFrequency:
    def test_n1_matches_closed_form(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            m = rng.uniform(0.5, 2.0)
            f = rng.uniform(0.05, 0.4) * rng.choice([-1.0, 1.0])
            l = int(rng.integers(1, 4))
            cfg = ModelConfig(mass=m, coulomb_f=f, angular_l=l)
            gs = ground_state_coulomb(cfg)
            states = solve_frequency(cfg, 1, 10.0 * m)
            assert len(states) == 1
            assert states[0].omega == pytest.approx(gs.omega, rel=1e-10)
            assert states[0].energy == pytest.approx(gs.energy, rel=1e-10)

    def test_f_zero_even_n_degenerate(self):
        cfg = ModelConfig(mass=1.0, coulomb_f=0.0, angular_l=1)
        with pytest.raises(DegenerateCoupling):
            solve_frequency(cfg, 2, 10.0)

    def test_f_zero_odd_n_empty(self):
        cfg = ModelConfig(mass=1.0, coulomb_f=0.0, angular_l=1)
        assert solve_frequency(cfg, 1, 10.0) == []

    def test_n2_pinned_root(self):
        cfg = ModelConfig(mass=1.0, coulomb_f=0.2, angular_l=1)
        states = solve_frequency(cfg, 2, 50.0)
        assert len(states) == 1
        assert states[0].omega == pytest.approx(0.0060233707538012013, rel=1e-12)
        assert states[0].energy == pytest.approx(1.0207449248816959, rel=1e-12)

    def test_supercritical_returns_empty(self):
        cfg = ModelConfig(mass=1.0, coulomb_f=0.68, angular_l=1)
        assert solve_frequency(cfg, 1, 50.0) == []

    def test_sorted_ascending(self):
        cfg = ModelConfig(mass=1.0, coulomb_f=0.35, angular_l=2)
        for n in (3, 4):
            states = solve_frequency(cfg, n, 50.0)
            omegas = [s.omega for s in states]
            assert omegas == sorted(omegas)

    def test_root_set_invariant_under_f_sign(self):
        cfg_p = ModelConfig(mass=1.0, coulomb_f=0.3, angular_l=1)
        cfg_m = ModelConfig(mass=1.0, coulomb_f=-0.3, angular_l=1)
        for n in (1, 2, 3):
            wp = [s.omega for s in solve_frequency(cfg_p, n, 50.0)]
            wm = [s.omega for s in solve_frequency(cfg_m, n, 50.0)]
            assert len(wp) == len(wm)
            for a, b in zip(wp, wm):
                assert a == pytest.approx(b, rel=1e-10)


class TestClosedFormConsistency:
    def test_closed_forms_mutually_consistent(self):
        # substituting the ground-state frequency into the energy relation
        # reproduces the closed-form energy
        rng = np.random.default_rng(3)
        for _ in range(100):
            m = rng.uniform(0.5, 2.0)
            f = rng.uniform(0.05, 0.4)
            l = int(rng.integers(1, 4))
            cfg = ModelConfig(mass=m, coulomb_f=f, angular_l=l)
            gamma = cfg.gamma_abs
            e_closed = m / math.sqrt(1.0 - 2.0 * f**2 * (3.0 + 2.0 * gamma) / (2.0 * gamma + 1.0))
            w_closed = 2.0 * e_closed**2 * f**2 / (m * (2.0 * gamma + 1.0))
            e_relation = math.sqrt(m**2 + m * w_closed * (2.0 + 2.0 * gamma + 1.0))
            assert e_relation == pytest.approx(e_closed, rel=1e-12)


class TestGroundStateLinear:
    def test_pinned_values(self):
        # frozen from an independent 50-digit damped fixed-point solve
        cfg = ModelConfig(mass=1.0, coulomb_f=0.2, linear_nu=0.1, angular_l=1)
        gs = ground_state_linear(cfg)
        assert gs.omega == pytest.approx(0.19793043237570805, rel=1e-12)
        assert gs.energy == pytest.approx(1.3857508095860609, rel=1e-12)
        assert abs(gs.residual) < 1e-12

    def test_nu_to_zero_converges_to_coulomb(self):
        base = ModelConfig(mass=1.0, coulomb_f=0.2, angular_l=1)
        gc = ground_state_coulomb(base)
        gl = ground_state_linear(ModelConfig(mass=1.0, coulomb_f=0.2, linear_nu=1e-8, angular_l=1))
        assert gl.omega == pytest.approx(gc.omega, rel=1e-5)
        assert gl.energy == pytest.approx(gc.energy, rel=1e-5)

    def test_nu_zero_falls_back_to_coulomb(self):
        cfg = ModelConfig(mass=1.0, coulomb_f=0.2, angular_l=1)
        assert ground_state_linear(cfg).variant == "coulomb"

    def test_cubic_has_real_root(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            cfg = ModelConfig(
                mass=rng.uniform(0.5, 2.0),
                coulomb_f=rng.uniform(0.1, 0.4),
                linear_nu=rng.uniform(0.02, 0.3),
                angular_l=int(rng.integers(1, 3)),
            )
            energy = 1.3 * cfg.mass
            roots = np.roots(cubic_coefficients(cfg, energy))
            assert any(abs(r.imag) < 1e-9 for r in roots)

    def test_f_zero_with_nu(self):
        # f = 0 but nu > 0 is still constrained: theta^3 = m^2 nu^2 (3+2|gamma|)/2
        cfg = ModelConfig(mass=1.0, coulomb_f=0.0, linear_nu=0.2, angular_l=1)
        gs = ground_state_linear(cfg)
        theta = math.hypot(cfg.mass * gs.omega, cfg.linear_nu)
        expect = (cfg.mass**2 * cfg.linear_nu**2 * (3.0 + 2.0 * cfg.gamma_abs) / 2.0) ** (1 / 3)
        assert theta == pytest.approx(expect, rel=1e-10)

    def test_scan_agrees_with_coupled_solve(self):
        cfg = ModelConfig(mass=1.0, coulomb_f=0.2, linear_nu=0.1, angular_l=1)
        gs = ground_state_linear(cfg)
        states = solve_frequency_linear(cfg, 1, 10.0)
        assert len(states) == 1
        assert states[0].omega == pytest.approx(gs.omega, rel=1e-10)

    def test_printed_cubic_disagrees(self):
        cfg = ModelConfig(mass=1.0, coulomb_f=0.2, linear_nu=0.1, angular_l=1)
        good = ground_state_linear(cfg)
        bad = ground_state_linear(cfg, cubic_form="printed")
        assert abs(bad.omega - good.omega) / good.omega > 0.05
        # only the re-derived form truncates the series (a_2 = 0)
        assert abs(good.residual) < 1e-12
        assert abs(bad.residual) > 1e-3
