"""Exception hierarchy shared by every module."""


class KrDecompError(Exception):
    """Base class for all library errors."""


class DimensionError(KrDecompError, ValueError):
    """Transformations or monoids over state sets of different sizes."""


class FormatError(KrDecompError, ValueError):
    """Malformed monoid, DFA or certificate description."""


class DomainError(KrDecompError, ValueError):
    """An operation was called outside the inputs it is defined for."""


class CertificateError(KrDecompError, ValueError):
    """A certificate is structurally unusable (e.g. phi is not surjective)."""


class WordError(KrDecompError, LookupError):
    """An element has no witness word over the covered generators."""


class ResourceError(KrDecompError, RuntimeError):
    """A product space would exceed the configured state cap."""

    def __init__(self, message, size=None):
        super().__init__(message)
        self.size = size
