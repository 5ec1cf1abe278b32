"""Exception types shared across the package.

Everything downstream is exact arithmetic, so anything that would force a
rounding or an approximation is an error, never a warning.
"""


class KofbgError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(KofbgError, ValueError):
    """Malformed input: bad permutation, non-prime argument, bad spec."""


class MembershipError(ValidationError):
    """An element or subgroup was required to lie in a group and does not."""


class ResourceError(KofbgError, RuntimeError):
    """A computation exceeded the configured enumeration cap."""

    def __init__(self, message: str, *, size: int, cap: int):
        super().__init__(message)
        self.size = size
        self.cap = cap


class ConsistencyError(KofbgError, RuntimeError):
    """Two routes that must agree exactly did not; aborts the computation.

    Raised instead of rounding whenever a decomposition that must be
    integral is not, or when independently computed values disagree.
    """
