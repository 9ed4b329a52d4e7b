"""Exception types shared across the package."""


class AdnoiseError(Exception):
    """Base class for all package-specific errors."""


class DomainError(AdnoiseError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidParametersError(DomainError):
    """Physical parameters violate a validity condition (e.g. beta0*z0 <= 4)."""


class InsufficientLevelsError(AdnoiseError):
    """The potential supports fewer bound levels than required."""


class ConvergenceError(AdnoiseError):
    """An iterative numerical routine failed to converge."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class CapacityError(AdnoiseError):
    """A requested computation exceeds the configured size cap."""


class ReducibilityError(AdnoiseError):
    """The rate matrix has a degenerate kernel (chain is not irreducible)."""


class ResolutionError(AdnoiseError):
    """A discretization grid is too coarse to resolve the requested dynamics."""


class NumericalError(AdnoiseError):
    """A numerical consistency check failed (ill-conditioned input)."""
