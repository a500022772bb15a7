"""Exception types shared across the package."""


class ShapcondError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDimensionError(ShapcondError, ValueError):
    """A dimension argument is outside its supported range."""


class DomainError(ShapcondError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericalError(ShapcondError, RuntimeError):
    """A numerical routine failed (singular system, divergence, ...)."""


class NotPositiveDefiniteError(NumericalError):
    """A matrix expected to be symmetric positive definite is not."""


class OptimizationError(NumericalError):
    """An optimizer could not make progress (non-finite objective, ...)."""


class InsufficientDataError(ShapcondError, ValueError):
    """Too few observations to fit the requested object."""


class IncompleteGameError(ShapcondError, ValueError):
    """A cooperative game is missing contribution values for some coalitions."""


class ConfigError(ShapcondError, ValueError):
    """An experiment configuration is invalid or inconsistent."""


class RowCapExceededError(ConfigError):
    """An augmented design would exceed the configured row cap."""
