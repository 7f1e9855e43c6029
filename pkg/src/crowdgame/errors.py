"""Exception types shared across the package."""


class CrowdGameError(Exception):
    """Base class for all package errors."""


class ParameterError(CrowdGameError, ValueError):
    """An argument violates its documented domain."""


class CapacityError(CrowdGameError, ValueError):
    """A request exceeds a hard capacity limit (e.g. enumeration size)."""


class InternalConsistencyError(CrowdGameError, RuntimeError):
    """A numeric routine failed an internal sanity check."""
