"""Radial wavefunctions of truncated (polynomial) bound states.

The radial profile in the scaled coordinate x (x = sqrt(m*omega) rho for the
Coulomb variant, x = sqrt(theta) rho with the linear potential) is

    R(x) = exp(-x^2/2) * exp(-mu x / 2) * x^|gamma| * H(x),

with mu = 0 in the Coulomb case and H the degree-n Heun polynomial.
Normalization uses the planar measure 2 pi rho d rho of the 2+1-dimensional
setting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import derive_coulomb, derive_linear
from .errors import GridTooCoarse
from .heun import SeriesSolution, coefficients_coulomb, coefficients_linear, mark_truncated
from .spectrum import BoundState

RICHARDSON_TOL = 1e-8
TAIL_TOL = 1e-10


@dataclass(frozen=True)
class RadialWavefunction:
    """Normalized radial samples of a polynomial bound state."""

    state: BoundState
    scale: float  # coordinate map factor: x = scale * rho
    rho: np.ndarray
    values: np.ndarray  # R(rho), normalized to 2 pi int |R|^2 rho d rho = 1
    norm_constant: float  # multiplies the raw profile to normalize
    series: SeriesSolution


def state_series(state: BoundState, strict: bool = True) -> SeriesSolution:
    """Reconstruct the truncated Heun polynomial of a bound state.

    With strict=False the series is cut at degree n without certifying that
    a_{n+1} vanishes; used to materialize the *claimed* polynomial of a
    candidate state under scrutiny.
    """
    cfg = state.config
    if state.variant == "coulomb":
        p = derive_coulomb(cfg, state.energy, state.omega)
        s = coefficients_coulomb(p, state.n + 2)
    else:
        p = derive_linear(cfg, state.energy, state.omega)
        s = coefficients_linear(p, state.n + 2)
    if strict:
        return mark_truncated(s, state.n)
    return SeriesSolution(
        coefficients=s.coefficients,
        variant=s.variant,
        params_snapshot=s.params_snapshot,
        truncation_degree=state.n,
    )


def state_scale(state: BoundState) -> float:
    """Coordinate map factor sqrt(m*omega) (Coulomb) or sqrt(theta) (linear)."""
    cfg = state.config
    if state.variant == "coulomb":
        return math.sqrt(cfg.mass * state.omega)
    return math.hypot(cfg.mass * state.omega, cfg.linear_nu) ** 0.5


def radial_profile(state: BoundState, rho: np.ndarray, series: SeriesSolution | None = None) -> np.ndarray:
    """Unnormalized R(rho) of a polynomial bound state (vectorized)."""
    if series is None:
        series = state_series(state)
    scale = state_scale(state)
    x = scale * np.asarray(rho, float)
    gamma = state.config.gamma_abs
    poly = np.polynomial.polynomial.polyval(
        x, series.coefficients[: state.n + 1]
    )
    mu = series.params_snapshot.mu if state.variant == "linear" else 0.0
    with np.errstate(divide="ignore"):
        prefac = np.where(x > 0.0, np.exp(-0.5 * x**2 - 0.5 * mu * x) * x**gamma, 1.0 if gamma == 0.0 else 0.0)
    return prefac * poly


def _planar_norm_sq(rho: np.ndarray, values: np.ndarray) -> float:
    return 2.0 * math.pi * float(np.trapezoid(values**2 * rho, rho))


def build_wavefunction(
    state: BoundState, rho_max: float | None = None, grid_points: int = 2001
) -> RadialWavefunction:
    """Sample and normalize the radial wavefunction on a uniform rho grid.

    Richardson check: the trapezoid norm on the full grid and on every other
    point must agree to RICHARDSON_TOL, else GridTooCoarse.  The tail beyond
    rho_max is bounded analytically through the Gaussian factor and must be
    below TAIL_TOL of the norm.
    """
    if grid_points < 100:
        raise ValueError(f"grid_points must be >= 100, got {grid_points}")
    series = state_series(state)
    scale = state_scale(state)
    if rho_max is None:
        rho_max = 10.0 / scale
    rho = np.linspace(0.0, rho_max, grid_points)
    raw = radial_profile(state, rho, series)

    norm_h = _planar_norm_sq(rho, raw)
    norm_2h = _planar_norm_sq(rho[::2], raw[::2])
    richardson = norm_h + (norm_h - norm_2h) / 3.0
    if abs(norm_h - norm_2h) / 3.0 > RICHARDSON_TOL * richardson:
        raise GridTooCoarse(
            f"trapezoid Richardson disagreement {abs(norm_h - norm_2h) / 3.0:.3e} "
            f"exceeds {RICHARDSON_TOL:.0e} of the norm"
        )

    # Tail bound: for x >= x_max the integrand e^{-x^2} x^{2|gamma|+1} |H|^2
    # (planar measure, per unit x) is dominated by its boundary value times
    # exp(-2 x_max (x - x_max)) once the power-law growth p/x_max is covered.
    x_max = scale * rho_max
    gamma = state.config.gamma_abs
    p_growth = 2.0 * gamma + 1.0 + 2.0 * state.n
    decay = 2.0 * x_max - p_growth / x_max
    if decay <= 0.0:
        raise GridTooCoarse(f"rho_max too small: x_max = {x_max} inside the tail region")
    boundary = 2.0 * math.pi * raw[-1] ** 2 * rho_max
    tail_bound = boundary / (decay * scale)
    if tail_bound > TAIL_TOL * richardson:
        raise GridTooCoarse(
            f"analytic tail bound {tail_bound:.3e} exceeds {TAIL_TOL:.0e} of the norm; "
            "increase rho_max"
        )

    norm_constant = 1.0 / math.sqrt(richardson)
    return RadialWavefunction(
        state=state,
        scale=scale,
        rho=rho,
        values=norm_constant * raw,
        norm_constant=norm_constant,
        series=series,
    )


def count_nodes(w: RadialWavefunction) -> int:
    """Strict sign changes of R on (0, rho_max), ignoring near-zero samples."""
    v = w.values[1:]  # drop rho = 0
    keep = np.abs(v) >= 1e-12 * np.max(np.abs(v))
    signs = np.sign(v[keep])
    return int(np.sum(signs[1:] != signs[:-1]))


def polynomial_nodes(state: BoundState, rho_max: float | None = None, strict: bool = True) -> int:
    """Analytic node count: real positive roots of H inside the grid."""
    series = state_series(state, strict=strict)
    scale = state_scale(state)
    if rho_max is None:
        rho_max = 10.0 / scale
    x_max = scale * rho_max
    coeffs = series.coefficients[: state.n + 1]
    roots = np.polynomial.polynomial.polyroots(coeffs)
    count = 0
    for r in roots:
        if abs(r.imag) <= 1e-9 * max(1.0, abs(r)) and 0.0 < r.real < x_max:
            count += 1
    return count
