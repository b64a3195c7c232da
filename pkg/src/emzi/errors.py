class ConfigurationError(ValueError):
    """Invalid run configuration (bad preset name, inconsistent pulse setup, ...)."""


class DomainError(ValueError):
    """Engine-level domain violation (photon underflow, extinguished signal, ...)."""
