"""Exception types shared across the package."""


class NzcError(Exception):
    """Base class for all package-specific errors."""


class CapExceededError(NzcError):
    """A configured size cap (vertices, group elements, search nodes) was hit."""


class UnsupportedFieldError(NzcError):
    """The operation is only defined for a different field size q."""
