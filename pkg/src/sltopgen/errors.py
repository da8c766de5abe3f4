"""Exception hierarchy shared by all subpackages."""


class SLTopGenError(Exception):
    """Base class for errors raised by this package."""


class SpecError(SLTopGenError, ValueError):
    """Malformed class data, tuple, or configuration."""


class PreconditionError(SLTopGenError, ValueError):
    """An operation was called outside its mathematical domain."""


class UnsupportedCase(SLTopGenError, ValueError):
    """A case the theory does not cover (e.g. n = 2 with three classes)."""


class ResourceLimitError(SLTopGenError, RuntimeError):
    """An enumeration or search would exceed its configured cap."""


class DeterminantError(SLTopGenError, ValueError):
    """A realized representative does not have determinant one."""

    def __init__(self, message, det=None, scalar=None):
        super().__init__(message)
        self.det = det
        self.scalar = scalar
