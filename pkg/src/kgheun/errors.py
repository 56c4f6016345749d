"""Exception hierarchy for the kgheun package.

Domain errors describe physically inadmissible inputs; numerical errors
describe failures of the solvers themselves.
"""


class KGHeunError(Exception):
    """Base class for all package errors."""


class DomainError(KGHeunError):
    """Input is physically inadmissible (no state exists)."""


class NumericalError(KGHeunError):
    """A solver failed to produce a trustworthy result."""


class InvalidCoupling(DomainError):
    """l^2 <= f^2: the centrifugal index gamma is complex ("fall to the center")."""


class InvalidFrequency(DomainError):
    """Oscillator frequency must be strictly positive."""


class NoRealEnergy(DomainError):
    """The closed-form energy relation gives E^2 < 0 at this frequency."""


class SupercriticalCoupling(DomainError):
    """Coulomb strength too large: the ground-state energy square root argument is <= 0."""


class DegenerateCoupling(DomainError):
    """f = 0: the truncation condition is identically satisfied, frequency unconstrained."""


class NoPhysicalRoot(DomainError):
    """The coupled (theta, E) system has no real solution with theta > nu on the branch."""


class ConvergenceFailure(NumericalError):
    """Series evaluation failed the tail criterion for 200 successive terms."""


class GridTooCoarse(NumericalError):
    """Quadrature Richardson check exceeded tolerance; refine the grid."""


class BracketExhausted(NumericalError):
    """No eigenvalue sign change found in the requested energy bracket."""


class StiffIntegration(NumericalError):
    """The ODE integration produced non-finite values."""
