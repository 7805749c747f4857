"""Exception hierarchy shared across the package."""


class GammafiltError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(GammafiltError):
    """Vector or matrix dimensions are incompatible with the ambient space."""


class NotSublatticeError(GammafiltError):
    """A lattice claimed to be contained in another is not."""


class GroupMismatchError(GammafiltError):
    """Ring elements from different groups were combined."""


class ArityMismatchError(GammafiltError):
    """Presentation variable count does not match the group rank."""


class InvalidParamsError(GammafiltError):
    """Bad user-supplied parameters (non-prime p, bad exponents, ...)."""


class BudgetExceededError(GammafiltError):
    """Group size or degree exceeds the configured computation budget."""


class NotPeriodicError(GammafiltError):
    """An operation requiring invertible v1 was applied to a connective series."""


class IdentityAssertionError(GammafiltError):
    """A derived algebraic identity failed its structural assertion.

    Signals an implementation bug, not bad input.
    """


class CertificateFailureError(GammafiltError):
    """A membership certificate could not be established."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
