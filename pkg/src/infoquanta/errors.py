"""Exception hierarchy shared by all modules."""


class InfoQuantaError(Exception):
    """Base class for every error raised by this package."""


class DomainError(InfoQuantaError, ValueError):
    """An argument lies outside the domain of the operation."""


class ValidationError(InfoQuantaError, ValueError):
    """A structured input (weights, matrix, config) fails its invariants."""


class PositivityError(ValidationError):
    """A density matrix has an eigenvalue below the clamping window."""


class ShapeError(InfoQuantaError, ValueError):
    """Dimensions of the inputs are incompatible."""


class ConvergenceError(InfoQuantaError, RuntimeError):
    """An iterative or numerical routine failed to converge."""
