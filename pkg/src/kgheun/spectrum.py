"""Quantized (frequency, energy) pairs from polynomial truncation.

Truncating the Heun series at degree n requires two conditions: the index
condition (g = 2n, resp. sigma = 2n), which fixes E as a function of omega,
and a_{n+1} = 0, which then restricts omega itself.  The ground state n = 1
admits closed forms; arbitrary n is handled by a bracketed root scan of the
truncation residual over omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from .core import Branch, ModelConfig, derive_coulomb, derive_linear
from .errors import (
    DegenerateCoupling,
    NoPhysicalRoot,
    NoRealEnergy,
    SupercriticalCoupling,
)
from .heun import (
    coefficients_coulomb,
    coefficients_linear,
    constrained_energy,
    truncation_residual,
)

# Bracket scan resolution (points per decade of omega) and bisection target.
SCAN_PER_DECADE = 400
ROOT_RTOL = 1e-13


@dataclass(frozen=True)
class BoundState:
    """An admissible (n, l, omega, E) quadruple with provenance."""

    config: ModelConfig
    n: int
    l: int
    omega: float
    energy: float
    variant: str  # "coulomb" | "linear"
    method: str  # "closed_form" | "root_found"
    residual: float


def energy_from_frequency(config: ModelConfig, omega: float, n: int) -> float:
    """Energy on the configured branch at frequency omega with index condition 2n."""
    return constrained_energy(config, n, omega)


def _state_residual(config: ModelConfig, n: int, omega: float) -> float:
    try:
        return truncation_residual(config, n, omega)
    except NoRealEnergy:
        return math.nan


def _make_state(config: ModelConfig, n: int, omega: float, variant: str, method: str) -> BoundState:
    energy = constrained_energy(config, n, omega)
    return BoundState(
        config=config,
        n=n,
        l=config.angular_l,
        omega=omega,
        energy=energy,
        variant=variant,
        method=method,
        residual=truncation_residual(config, n, omega),
    )


def ground_state_coulomb(config: ModelConfig) -> BoundState:
    """Closed-form n = 1 state of the oscillator + Coulomb problem.

    omega = 2 E^2 f^2 / (m (2|gamma| + 1)),
    E = +- m / sqrt(1 - 2 f^2 (3 + 2|gamma|) / (2|gamma| + 1)).
    """
    f = config.coulomb_f
    if f == 0.0:
        raise DegenerateCoupling(
            "f = 0: frequency unconstrained, spectrum is the pure Klein-Gordon oscillator"
        )
    m = config.mass
    gamma = config.gamma_abs
    arg = 1.0 - 2.0 * f**2 * (3.0 + 2.0 * gamma) / (2.0 * gamma + 1.0)
    if arg <= 0.0:
        raise SupercriticalCoupling(
            f"1 - 2 f^2 (3+2|gamma|)/(2|gamma|+1) = {arg} <= 0: no real ground-state energy"
        )
    energy = config.branch.sign * m / math.sqrt(arg)
    omega = 2.0 * energy**2 * f**2 / (m * (2.0 * gamma + 1.0))
    # Self-consistency: the energy relation at (omega, n=1) must give E back.
    e_check = constrained_energy(config, 1, omega)
    assert abs(e_check - energy) <= 1e-12 * abs(energy)
    p = derive_coulomb(config, energy, omega)
    residual = float(coefficients_coulomb(p, 2).coefficients[2])
    return BoundState(
        config=config,
        n=1,
        l=config.angular_l,
        omega=omega,
        energy=energy,
        variant="coulomb",
        method="closed_form",
        residual=residual,
    )


def _scan_roots(config: ModelConfig, n: int, omega_max: float) -> list[float]:
    """Sign-change scan of the truncation residual on a log grid in omega."""
    omega_min = omega_max * 1e-10
    decades = math.log10(omega_max / omega_min)
    npts = max(int(decades * SCAN_PER_DECADE), 32)
    grid = np.geomspace(omega_min, omega_max, npts)
    vals = np.array([_state_residual(config, n, w) for w in grid])
    roots = []
    for i in range(len(grid) - 1):
        lo, hi = vals[i], vals[i + 1]
        if math.isnan(lo) or math.isnan(hi):
            continue
        if lo == 0.0:
            roots.append(grid[i])
        elif lo * hi < 0.0:
            r = optimize.brentq(
                lambda w: truncation_residual(config, n, w),
                grid[i],
                grid[i + 1],
                rtol=ROOT_RTOL,
                xtol=1e-300,
            )
            roots.append(r)
    if vals[-1] == 0.0 and not math.isnan(vals[-1]):
        roots.append(grid[-1])
    return sorted(roots)


def solve_frequency(config: ModelConfig, n: int, omega_max: float) -> list[BoundState]:
    """All simple roots of the Coulomb truncation residual in (0, omega_max].

    Raises DegenerateCoupling when the residual vanishes identically (f = 0
    with n's parity making a_{n+1} an odd coefficient).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    cfg = config
    if cfg.linear_nu != 0.0:
        cfg = ModelConfig(cfg.mass, cfg.coulomb_f, 0.0, cfg.angular_l, cfg.branch)
    if cfg.coulomb_f == 0.0:
        # delta = 0: odd coefficients vanish identically, even ones are
        # omega-independent constants.
        probe = truncation_residual(cfg, n, 1.0)
        if probe == 0.0:
            raise DegenerateCoupling(
                "f = 0: truncation residual identically zero, frequency unconstrained"
            )
        return []
    return [
        _make_state(cfg, n, w, "coulomb", "root_found")
        for w in _scan_roots(cfg, n, omega_max)
    ]


def solve_frequency_linear(config: ModelConfig, n: int, omega_max: float) -> list[BoundState]:
    """Same as solve_frequency but with the linear potential switched on."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if config.linear_nu == 0.0:
        return solve_frequency(config, n, omega_max)
    return [
        _make_state(config, n, w, "linear", "root_found")
        for w in _scan_roots(config, n, omega_max)
    ]


def cubic_coefficients(
    config: ModelConfig, energy: float, form: str = "rederived"
) -> tuple[float, float, float, float]:
    """Coefficients (c3, c2, c1, c0) of the ground-state cubic in theta.

    "rederived": theta^3 - [2 f^2 E^2/(1+2|gamma|)] theta^2
                 + [2 m nu f E (2+2|gamma|)/(1+2|gamma|)] theta
                 - m^2 nu^2 (3+2|gamma|)/2 = 0,
    obtained from a_2 = 0 under sigma = 2 (equivalently
    vartheta^2 - mu*vartheta - 2*alpha = 0 cleared of denominators).

    "printed": a commonly quoted alternative form, kept for comparison; it
    does not reduce to the Coulomb ground-state frequency at nu -> 0 and
    fails independent verification.
    """
    m = config.mass
    f = config.coulomb_f
    nu = config.linear_nu
    gamma = config.gamma_abs
    if form == "rederived":
        c2 = -2.0 * f**2 * energy**2 / (1.0 + 2.0 * gamma)
        c1 = 2.0 * m * nu * f * energy * (2.0 + 2.0 * gamma) / (1.0 + 2.0 * gamma)
        c0 = -(m**2) * nu**2 * (3.0 + 2.0 * gamma) / 2.0
    elif form == "printed":
        c2 = -2.0 * f**2 * energy**2 / (2.0 + 2.0 * gamma)
        c1 = -2.0 * m * nu * f * energy
        c0 = -(m**2) * nu**2 * (1.0 + 2.0 * gamma) * (3.0 + 2.0 * gamma) / (
            2.0 * (2.0 + gamma)
        )
    else:
        raise ValueError(f"unknown cubic form {form!r}")
    return (1.0, c2, c1, c0)


def _cubic_value(config: ModelConfig, theta: float, energy: float, form: str) -> float:
    c3, c2, c1, c0 = cubic_coefficients(config, energy, form)
    return ((c3 * theta + c2) * theta + c1) * theta + c0


def _energy_at_theta(config: ModelConfig, theta: float) -> float:
    """Energy from the linear-case relation at n = 1, with omega from theta."""
    m = config.mass
    nu = config.linear_nu
    if theta <= nu:
        raise NoPhysicalRoot(f"theta = {theta} <= nu = {nu}: omega not real")
    omega = math.sqrt(theta**2 - nu**2) / m
    cfg_e2 = (
        m**2
        - m * omega
        + 2.0 * theta * (1.0 + config.gamma_abs + 1.0)
        - m**2 * nu**2 / theta**2
    )
    if cfg_e2 < 0.0:
        raise NoRealEnergy(f"E^2 = {cfg_e2} < 0 at theta = {theta}")
    return config.branch.sign * math.sqrt(cfg_e2)


def ground_state_linear(config: ModelConfig, cubic_form: str = "rederived") -> BoundState:
    """n = 1 state with the linear scalar potential on.

    Solves the coupled system {cubic(theta; E) = 0, energy relation at n=1}
    by damped fixed-point iteration seeded from the nu -> 0 closed form,
    polished by a Newton-type 2-vector solve.
    """
    nu = config.linear_nu
    if nu <= 0.0:
        return ground_state_coulomb(config)
    m = config.mass

    # Seed from the Coulomb closed form when f != 0, else from the exact
    # f = 0 root theta^3 = m^2 nu^2 (3 + 2|gamma|)/2.
    if config.coulomb_f != 0.0:
        seed = ground_state_coulomb(
            ModelConfig(m, config.coulomb_f, 0.0, config.angular_l, config.branch)
        )
        theta = max(math.hypot(m * seed.omega, nu), nu * (1.0 + 1e-9))
        energy = seed.energy
    else:
        theta = (m**2 * nu**2 * (3.0 + 2.0 * config.gamma_abs) / 2.0) ** (1.0 / 3.0)
        theta = max(theta, nu * (1.0 + 1e-9))
        energy = config.branch.sign * m

    def pick_root(energy_val: float, theta_ref: float) -> float:
        roots = np.roots(cubic_coefficients(config, energy_val, cubic_form))
        real = [r.real for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r)) and r.real > nu]
        if not real:
            raise NoPhysicalRoot(
                f"cubic ({cubic_form}) has no real root with theta > nu = {nu}"
            )
        return min(real, key=lambda r: abs(r - theta_ref))

    # Damped fixed point: theta from the cubic at fixed E, E from the energy
    # relation at the new theta.
    for _ in range(200):
        theta_new = pick_root(energy, theta)
        theta_next = 0.5 * (theta + theta_new)
        energy_next = _energy_at_theta(config, theta_next)
        done = abs(theta_next - theta) <= 1e-9 * theta and abs(
            energy_next - energy
        ) <= 1e-9 * abs(energy)
        theta, energy = theta_next, energy_next
        if done:
            break

    def system(z):
        th, en = z
        if th <= nu:
            return [1e6 * (nu - th + 1.0), 0.0]
        try:
            e_rel = _energy_at_theta(config, th)
        except (NoPhysicalRoot, NoRealEnergy):
            return [1e6, 1e6]
        return [_cubic_value(config, th, en, cubic_form), en - e_rel]

    sol = optimize.root(system, [theta, energy], tol=1e-14)

    def accepted(th, en):
        if not (th > nu and math.isfinite(th) and math.isfinite(en)):
            return False
        r_cubic, r_energy = system([th, en])
        c3, c2, c1, c0 = cubic_coefficients(config, en, cubic_form)
        scale = max(abs(th**3), abs(c2 * th**2), abs(c1 * th), abs(c0))
        return abs(r_cubic) <= 1e-10 * scale and abs(r_energy) <= 1e-10 * abs(en)

    # MINPACK can report "not making good progress" when seeded at the
    # solution itself; trust the residuals, not the flag.
    if accepted(sol.x[0], sol.x[1]):
        theta, energy = float(sol.x[0]), float(sol.x[1])
    elif not accepted(theta, energy):
        raise NoPhysicalRoot(
            f"coupled (theta, E) solve failed for cubic form {cubic_form!r}: {sol.message}"
        )
    omega = math.sqrt(theta**2 - nu**2) / m
    p = derive_linear(config, energy, omega)
    residual = float(coefficients_linear(p, 2).coefficients[2])
    return BoundState(
        config=config,
        n=1,
        l=config.angular_l,
        omega=omega,
        energy=energy,
        variant="linear",
        method="closed_form",
        residual=residual,
    )
