"""Exception hierarchy shared by every module."""


class EOPError(Exception):
    """Base class for all errors raised by calogero_eop."""


class ParameterError(EOPError, ValueError):
    """Couplings or derived parameters violate a reality/validity bound."""


class DomainError(EOPError, ValueError):
    """A point lies outside the domain of the evaluated function."""


class DegenerateConfigurationError(DomainError):
    """All three particles coincide (r = 0)."""


class SingularConfigurationError(DomainError):
    """A denominator of the configuration-space expression vanishes."""


class ConstructionError(EOPError):
    """Polynomial construction failed (nullspace dimension != 1)."""


class GridError(EOPError, ValueError):
    """Grid description is invalid or a sampled potential is not finite."""


class NullFunctionError(EOPError, ValueError):
    """A sampled function is numerically zero, so a relative norm is undefined."""


class SolverError(EOPError, RuntimeError):
    """Eigen solver failed to converge."""


class QuadratureError(EOPError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
