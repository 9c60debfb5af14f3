"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid or inconsistent configuration (bad key, bad value, mismatched sizes)."""


class UsageError(ValueError):
    """An operation was called with arguments outside its domain."""
