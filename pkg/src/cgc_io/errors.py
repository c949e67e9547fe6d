"""Errors raised while reading job and suite configuration."""


class ConfigError(ValueError):
    """Schema violation in a job or suite config; the message names the field and its admissible values."""


class OutputError(ValueError):
    """Writing an artifact failed; the message carries the path."""
