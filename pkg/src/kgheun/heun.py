"""Frobenius series of the biconfluent Heun equation.

Both radial reductions lead to an equation of the form

    H'' + [alpha/x - mu - 2x] H' + [s + t/x] H = 0,

with (mu, s, t) = (0, g, delta) in the Coulomb case and (mu, sigma,
vartheta) in the linear-potential case.  The power series H = sum a_j x^j
obeys the three-term recurrence

    (j+2)(j+1+alpha) a_{j+2} = [mu (j+1) - t] a_{j+1} - (s - 2j) a_j,

with a_0 = 1 and alpha a_1 = -t.  Imposing s = 2n and a_{n+1} = 0 truncates
the series to a polynomial of degree n; the second condition restricts the
oscillator frequency, which is what `truncation_residual` exposes for root
finding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .core import CoulombDerived, LinearDerived, ModelConfig, derive_coulomb, derive_linear
from .errors import ConvergenceFailure, NoRealEnergy

DerivedParams = Union[CoulombDerived, LinearDerived]

# a_{n+1}, a_{n+2} must vanish below this fraction of max|a_j| to call the
# series truncated.
TRUNCATION_TOL = 1e-12


@dataclass(frozen=True)
class SeriesSolution:
    """Frobenius coefficients a_0..a_N, with optional polynomial truncation."""

    coefficients: np.ndarray
    variant: str  # "coulomb" | "linear"
    params_snapshot: DerivedParams
    truncation_degree: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "coefficients", np.asarray(self.coefficients, float))


def _recurrence(alpha: float, mu: float, s: float, t: float, N: int) -> np.ndarray:
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    a = np.zeros(N + 1)
    a[0] = 1.0
    a[1] = -t / alpha
    for j in range(N - 1):
        a[j + 2] = ((mu * (j + 1) - t) * a[j + 1] - (s - 2.0 * j) * a[j]) / (
            (j + 2.0) * (j + 1.0 + alpha)
        )
    return a


def coefficients_coulomb(p: CoulombDerived, N: int) -> SeriesSolution:
    """Series coefficients for the Coulomb-case Heun equation (mu = 0)."""
    a = _recurrence(p.alpha, 0.0, p.g, p.delta, N)
    return SeriesSolution(coefficients=a, variant="coulomb", params_snapshot=p)


def coefficients_linear(p: LinearDerived, N: int) -> SeriesSolution:
    """Series coefficients for the linear-potential Heun equation."""
    a = _recurrence(p.alpha, p.mu, p.sigma, p.vartheta, N)
    return SeriesSolution(coefficients=a, variant="linear", params_snapshot=p)


def mark_truncated(s: SeriesSolution, n: int) -> SeriesSolution:
    """Return a copy of `s` tagged as a degree-n polynomial.

    Requires a_{n+1} and a_{n+2} to vanish relative to max|a_j|; by the
    three-term recurrence all higher coefficients then vanish too.
    """
    a = s.coefficients
    if len(a) < n + 3:
        raise ValueError("need coefficients up to a_{n+2} to certify truncation")
    scale = np.max(np.abs(a[: n + 1]))
    if abs(a[n + 1]) > TRUNCATION_TOL * scale or abs(a[n + 2]) > TRUNCATION_TOL * scale:
        raise ValueError(
            f"series does not truncate at degree {n}: "
            f"a_{n+1}={a[n+1]:.3e}, a_{n+2}={a[n+2]:.3e}, scale={scale:.3e}"
        )
    return SeriesSolution(
        coefficients=a,
        variant=s.variant,
        params_snapshot=s.params_snapshot,
        truncation_degree=n,
    )


def _energy_squared_coulomb(config: ModelConfig, n: int, omega: float) -> float:
    m = config.mass
    return m**2 + m * omega * (2.0 * n + 2.0 * config.gamma_abs + 1.0)


def _energy_squared_linear(config: ModelConfig, n: int, omega: float) -> float:
    m = config.mass
    nu = config.linear_nu
    theta = np.hypot(m * omega, nu)
    return (
        m**2
        - m * omega
        + 2.0 * theta * (n + config.gamma_abs + 1.0)
        - m**2 * nu**2 / theta**2
    )


def constrained_energy(config: ModelConfig, n: int, omega: float) -> float:
    """Energy that makes the truncation index condition (g = 2n or sigma = 2n) exact."""
    if config.linear_nu == 0.0:
        e2 = _energy_squared_coulomb(config, n, omega)
    else:
        e2 = _energy_squared_linear(config, n, omega)
    if e2 < 0.0:
        raise NoRealEnergy(f"E^2 = {e2} < 0 at omega = {omega}, n = {n}")
    return config.branch.sign * np.sqrt(e2)


def truncation_residual(config: ModelConfig, n: int, omega: float) -> float:
    """a_{n+1} with the energy slaved to omega so that the index condition holds.

    Roots of this function over omega are the admissible oscillator
    frequencies for quantum numbers (n, l).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    energy = constrained_energy(config, n, omega)
    if config.linear_nu == 0.0:
        p = derive_coulomb(config, energy, omega)
        s = coefficients_coulomb(p, n + 1)
    else:
        p = derive_linear(config, energy, omega)
        s = coefficients_linear(p, n + 1)
    return float(s.coefficients[n + 1])


def evaluate_series(s: SeriesSolution, x: float) -> float:
    """Evaluate H(x) = sum a_j x^j.

    Truncated solutions are evaluated exactly as polynomials (Horner).
    Otherwise terms are accumulated until |a_j x^j| / |partial sum| < 1e-15
    for 5 consecutive terms; ConvergenceFailure after 200 terms without that.
    """
    a = s.coefficients
    if s.truncation_degree is not None:
        poly = a[: s.truncation_degree + 1]
        return float(np.polynomial.polynomial.polyval(x, poly))
    total = 0.0
    small_streak = 0
    fail_streak = 0
    xj = 1.0
    for j in range(len(a)):
        term = a[j] * xj
        total += term
        xj *= x
        if not math.isfinite(total):
            raise ConvergenceFailure(f"series overflow at term {j} for x = {x}")
        if abs(term) < 1e-15 * abs(total) and total != 0.0:
            small_streak += 1
            fail_streak = 0
            if small_streak >= 5:
                return total
        else:
            small_streak = 0
            fail_streak += 1
            if fail_streak >= 200:
                raise ConvergenceFailure(
                    f"series tail not converged after 200 successive terms at x = {x}"
                )
    if len(a) >= 200:
        raise ConvergenceFailure(
            f"series tail not converged within {len(a)} available terms at x = {x}"
        )
    return total


def ode_residual(s: SeriesSolution, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Residual of the Heun ODE at points x, plus the local term scale.

    Returns (residual, scale) where scale is the largest magnitude among the
    individual ODE terms at each point; a genuine solution has
    |residual| << scale.
    """
    x = np.asarray(x, float)
    p = s.params_snapshot
    if s.variant == "coulomb":
        mu, big_s, t = 0.0, p.g, p.delta
    else:
        mu, big_s, t = p.mu, p.sigma, p.vartheta
    alpha = p.alpha
    if s.truncation_degree is not None:
        coeffs = s.coefficients[: s.truncation_degree + 1]
    else:
        coeffs = s.coefficients
    P = np.polynomial.Polynomial(coeffs)
    h = P(x)
    h1 = P.deriv(1)(x)
    h2 = P.deriv(2)(x) if len(coeffs) > 2 else np.zeros_like(x)
    terms = np.stack(
        [
            h2,
            (alpha / x - mu - 2.0 * x) * h1,
            (big_s + t / x) * h,
        ]
    )
    residual = terms.sum(axis=0)
    scale = np.max(np.abs(terms), axis=0)
    return residual, scale
