"""Physical configuration and derived parameters.

All quantities are in natural units (c = hbar = 1).  A relativistic scalar
particle in 2+1 dimensions is subject to an oscillator coupling of frequency
``omega``, an attractive/repulsive Coulomb term ``f / rho`` entering through
the time component of the gauge potential, and an optional linear scalar
potential ``nu * rho`` added to the mass.

The radial problem reduces to a biconfluent Heun equation; the parameter
bundles below hold every auxiliary symbol that recurrence and quantization
formulas need, as pure functions of (config, E, omega).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidCoupling, InvalidFrequency


class Branch(enum.Enum):
    """Sign of the energy: particle (+) or antiparticle (-) solutions."""

    POSITIVE = "positive"
    NEGATIVE = "negative"

    @property
    def sign(self) -> float:
        return 1.0 if self is Branch.POSITIVE else -1.0


@dataclass(frozen=True)
class ModelConfig:
    """Physical inputs of the model.

    mass:      rest mass m > 0.
    coulomb_f: Coulomb strength f (sign encodes attractive/repulsive).
    linear_nu: linear scalar potential strength nu >= 0; 0 selects the pure
               oscillator + Coulomb problem.
    angular_l: integer eigenvalue l of the angular momentum L_z.
    branch:    energy branch; default positive.
    """

    mass: float
    coulomb_f: float = 0.0
    linear_nu: float = 0.0
    angular_l: int = 0
    branch: Branch = Branch.POSITIVE

    def __post_init__(self):
        if not (self.mass > 0.0):
            raise InvalidCoupling(f"mass must be positive, got {self.mass}")
        if self.linear_nu < 0.0:
            raise InvalidCoupling(f"linear_nu must be >= 0, got {self.linear_nu}")
        # Regular solution ~ rho^|gamma| requires gamma^2 = l^2 - f^2 > 0.
        # l = 0 with f = 0 (gamma = 0) is admitted: the polynomial times
        # rho^0 is still the regular solution there.
        g2 = self.angular_l**2 - self.coulomb_f**2
        if self.coulomb_f != 0.0 and g2 <= 0.0:
            raise InvalidCoupling(
                f"l^2 - f^2 = {g2} <= 0: fall to the center, no regular solution"
            )

    @property
    def gamma_abs(self) -> float:
        """|gamma| = sqrt(l^2 - f^2), the index of the regular solution at 0."""
        return math.sqrt(self.angular_l**2 - self.coulomb_f**2)

    @property
    def alpha(self) -> float:
        """alpha = 2|gamma| + 1."""
        return 2.0 * self.gamma_abs + 1.0


@dataclass(frozen=True)
class CoulombDerived:
    """Auxiliary parameters of the oscillator + Coulomb reduction.

    beta      = E^2 - m^2 + m*omega
    gamma_abs = sqrt(l^2 - f^2)
    delta     = 2 E f / sqrt(m*omega)
    alpha     = 2|gamma| + 1
    g         = beta/(m*omega) - 2 - 2|gamma|
    """

    beta: float
    gamma_abs: float
    delta: float
    alpha: float
    g: float


@dataclass(frozen=True)
class LinearDerived:
    """Auxiliary parameters with the linear scalar potential switched on.

    theta    = sqrt(m^2 omega^2 + nu^2)
    tau      = 2 f E / sqrt(theta)
    mu       = 2 m nu / theta^(3/2)
    sigma    = beta/theta + mu^2/4 - 2 - 2|gamma|
    vartheta = tau - (mu/2)(2|gamma| + 1)

    The sign of the last term in vartheta is fixed by re-deriving the reduced
    equation; the alternative sign fails both the nu -> 0 limit and the ODE
    residual check.  At nu = 0 the bundle reduces field-by-field to
    CoulombDerived under theta <-> m*omega, tau <-> delta, sigma <-> g,
    vartheta <-> tau.
    """

    theta: float
    tau: float
    mu: float
    sigma: float
    vartheta: float
    gamma_abs: float
    alpha: float


def _check_frequency(omega: float) -> None:
    if not (omega > 0.0):
        raise InvalidFrequency(f"omega must be positive, got {omega}")


def derive_coulomb(config: ModelConfig, energy: float, omega: float) -> CoulombDerived:
    """Evaluate the Coulomb-case parameter bundle at a trial (E, omega)."""
    _check_frequency(omega)
    m = config.mass
    gamma = config.gamma_abs
    beta = energy**2 - m**2 + m * omega
    delta = 2.0 * energy * config.coulomb_f / math.sqrt(m * omega)
    alpha = 2.0 * gamma + 1.0
    g = beta / (m * omega) - 2.0 - 2.0 * gamma
    return CoulombDerived(beta=beta, gamma_abs=gamma, delta=delta, alpha=alpha, g=g)


def derive_linear(config: ModelConfig, energy: float, omega: float) -> LinearDerived:
    """Evaluate the linear-potential parameter bundle at a trial (E, omega)."""
    _check_frequency(omega)
    m = config.mass
    nu = config.linear_nu
    gamma = config.gamma_abs
    theta = math.hypot(m * omega, nu)
    beta = energy**2 - m**2 + m * omega
    tau = 2.0 * config.coulomb_f * energy / math.sqrt(theta)
    mu = 2.0 * m * nu / theta**1.5
    sigma = beta / theta + mu**2 / 4.0 - 2.0 - 2.0 * gamma
    alpha = 2.0 * gamma + 1.0
    vartheta = tau - 0.5 * mu * alpha
    return LinearDerived(
        theta=theta,
        tau=tau,
        mu=mu,
        sigma=sigma,
        vartheta=vartheta,
        gamma_abs=gamma,
        alpha=alpha,
    )
