"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the documented domain of an operation."""


class CapacityError(ValueError):
    """A requested size exceeds the supported capacity."""


class InfeasibleCodeError(ValueError):
    """The requested codeword lengths violate the Kraft inequality."""


class CorruptCacheError(RuntimeError):
    """A sieve cache file failed magic, version or checksum validation."""


class StateError(RuntimeError):
    """An operation was applied to a session in the wrong state."""
