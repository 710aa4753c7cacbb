"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid parameters, profile definitions, or experiment configuration."""


class DomainError(ValueError):
    """An operation was called with inputs outside its mathematical domain."""


class NumericError(RuntimeError):
    """A numerical routine failed to converge or produced an invalid state."""
