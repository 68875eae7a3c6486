"""Quaternionic Dirac equation for the step potential ``i*V0 + k*W0``."""

__version__ = "0.1.0"

from .errors import ConsistencyError, DegeneracyError, DomainError
from .stepsolve import (
    Kinematics,
    StepPotential,
    Zone,
    classify_zone,
    coefficients,
    delta,
    momenta,
    psi_minus,
    psi_plus,
    tunneling_range,
    tunneling_range_circle,
    velocity,
)

__all__ = [
    "ConsistencyError", "DegeneracyError", "DomainError",
    "Kinematics", "StepPotential", "Zone",
    "classify_zone", "coefficients", "delta", "momenta",
    "psi_minus", "psi_plus", "tunneling_range", "tunneling_range_circle", "velocity",
]
