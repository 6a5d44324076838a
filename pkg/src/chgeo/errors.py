"""Exception types shared across the package."""

__all__ = [
    "DegeneratePlaneError",
    "FocalPointError",
    "FocalRadiusError",
    "OpenCaseError",
    "UnsupportedModelError",
    "ValidationError",
]


class DegeneratePlaneError(ValueError):
    """A sectional curvature was requested for a degenerate 2-plane."""


class ValidationError(ValueError):
    """Constructed data violates a structural invariant."""


class UnsupportedModelError(ValueError):
    """The requested computation is not defined for this model."""


class FocalPointError(RuntimeError):
    """A map differential is singular at the requested distance.

    Carries a description of the kernel so callers can report what
    collapsed instead of inverting a singular block.
    """

    def __init__(self, message, kernel_dim=None, singular_values=None):
        super().__init__(message)
        self.kernel_dim = kernel_dim
        self.singular_values = singular_values


class FocalRadiusError(FocalPointError):
    """A tube/equidistant construction hit a focal distance."""


class OpenCaseError(ValueError):
    """The requested classification is not available in this dimension."""
