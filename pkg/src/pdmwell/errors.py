"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument lies outside the domain of a function (e.g. x <= -a)."""


class BoundStateError(IndexError):
    """Requested level is not a bound state of the model."""


class ConstructionError(ValueError):
    """Model parameters admit no bound state or violate a constraint."""


class ConvergenceError(RuntimeError):
    """An iterative numerical procedure failed to converge."""


class ConfigurationError(ValueError):
    """Numerical settings are obviously inadequate for the requested check."""
