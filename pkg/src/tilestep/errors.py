"""Exception types shared across the package."""

from __future__ import annotations


class ValidationError(ValueError):
    """An input violated a documented bound or precondition."""


class ConfigurationError(ValidationError):
    """A layout or run configuration is malformed (e.g. empty protocol set)."""


class ResourceLimitError(RuntimeError):
    """A configured search limit was exceeded; the message names the cap."""
