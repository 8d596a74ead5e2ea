"""Rationally extended Calogero-Wolfes three-body potentials.

Closed-form spectra, exceptional-polynomial eigenfunctions, and their
independent numerical verification.
"""

from .errors import (
    ConstructionError,
    DegenerateConfigurationError,
    DomainError,
    EOPError,
    GridError,
    NullFunctionError,
    ParameterError,
    QuadratureError,
    SingularConfigurationError,
    SolverError,
)
from .families import Couplings, FamilyId, SpectralParams, solve_params
from .geometry import Config3, JacobiCoords, to_jacobi

__version__ = "0.1.0"

__all__ = [
    "Config3", "JacobiCoords", "to_jacobi", "Couplings", "FamilyId", "SpectralParams",
    "solve_params", "EOPError", "ParameterError", "DomainError",
    "DegenerateConfigurationError", "SingularConfigurationError", "ConstructionError",
    "GridError", "NullFunctionError", "SolverError", "QuadratureError",
]
