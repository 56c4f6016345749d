"""Bound states of the Klein-Gordon oscillator with a Coulomb potential and
an optional linear scalar potential, via polynomial solutions of the
biconfluent Heun equation, cross-checked by an independent shooting-method
eigensolver.
"""

from .core import (
    Branch,
    CoulombDerived,
    LinearDerived,
    ModelConfig,
    derive_coulomb,
    derive_linear,
)
from .errors import (
    BracketExhausted,
    ConvergenceFailure,
    DegenerateCoupling,
    DomainError,
    GridTooCoarse,
    InvalidCoupling,
    InvalidFrequency,
    KGHeunError,
    NoPhysicalRoot,
    NoRealEnergy,
    NumericalError,
    StiffIntegration,
    SupercriticalCoupling,
)
from .heun import (
    SeriesSolution,
    coefficients_coulomb,
    coefficients_linear,
    evaluate_series,
    mark_truncated,
    ode_residual,
    truncation_residual,
)
from .oracle import VerificationReport, shoot_eigenvalue, verify_state
from .spectrum import (
    BoundState,
    cubic_coefficients,
    energy_from_frequency,
    ground_state_coulomb,
    ground_state_linear,
    solve_frequency,
    solve_frequency_linear,
)
from .wavefunction import (
    RadialWavefunction,
    build_wavefunction,
    count_nodes,
    polynomial_nodes,
    radial_profile,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "ModelConfig",
    "CoulombDerived",
    "LinearDerived",
    "derive_coulomb",
    "derive_linear",
    "SeriesSolution",
    "coefficients_coulomb",
    "coefficients_linear",
    "evaluate_series",
    "mark_truncated",
    "ode_residual",
    "truncation_residual",
    "BoundState",
    "energy_from_frequency",
    "ground_state_coulomb",
    "ground_state_linear",
    "solve_frequency",
    "solve_frequency_linear",
    "cubic_coefficients",
    "RadialWavefunction",
    "build_wavefunction",
    "count_nodes",
    "polynomial_nodes",
    "radial_profile",
    "VerificationReport",
    "shoot_eigenvalue",
    "verify_state",
    "KGHeunError",
    "DomainError",
    "NumericalError",
    "InvalidCoupling",
    "InvalidFrequency",
    "NoRealEnergy",
    "SupercriticalCoupling",
    "DegenerateCoupling",
    "NoPhysicalRoot",
    "ConvergenceFailure",
    "GridTooCoarse",
    "BracketExhausted",
    "StiffIntegration",
]
