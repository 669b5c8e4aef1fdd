"""Exception taxonomy shared by all cleva modules.

Every error raised on bad user input derives from ClevaError so the CLI can
map failures onto its exit-code contract without catching bare Exception.
"""

from __future__ import annotations


class ClevaError(Exception):
    """Base class for all errors raised by this package."""


# --------------------------------------------------------------------------
# Input parsing and validation


class JsonSyntaxError(ClevaError):
    """Input text is not well-formed JSON."""


class SchemaError(ClevaError):
    """Descriptor violates the schema (missing/extra keys, bad values)."""

    def __init__(self, message: str, violations: tuple = ()):
        super().__init__(message)
        self.violations = violations


class VersionError(SchemaError):
    """Format version is not recognized by this implementation."""


# --------------------------------------------------------------------------
# Metric computation


class MetricError(ClevaError):
    """Base class for evaluation-measure failures."""


class MissingEntryError(MetricError):
    """A required accuracy-matrix entry is absent."""


class InvalidTaskError(MetricError):
    """Task index outside the range a measure is defined for."""


class LengthMismatchError(MetricError):
    """Two inputs that must share a length do not."""


class CurveIndexError(MetricError):
    """Requested point beyond the recorded convergence curve."""


class RaggedInputError(MetricError):
    """Per-task curves disagree on the available batch range."""


class ZeroProbabilityError(MetricError):
    """A prediction probability of zero makes the codelength diverge."""


class InvalidCountsError(MetricError):
    """Class counts must be positive integers."""


class InvalidTraceError(MetricError):
    """Resource trace is empty, negative, or inconsistent."""


# --------------------------------------------------------------------------
# Rendering


class EscapeError(ClevaError):
    """Label contains a character with no defined LaTeX escape."""


# --------------------------------------------------------------------------
# Repository sync


class SyncError(ClevaError):
    """Base class for methods-repository failures."""


class NetworkError(SyncError):
    """Transport-level failure reaching the repository."""

    def __init__(self, message: str, url: str, attempts: int = 1, retryable: bool = True):
        super().__init__(message)
        self.url = url
        self.attempts = attempts
        self.retryable = retryable


class ManifestFormatError(SyncError):
    """Manifest does not satisfy its invariants."""


class IntegrityError(SyncError):
    """Downloaded payload does not hash to the manifest digest."""


class MethodNotFoundError(SyncError):
    """Requested method id is not in the manifest or cache."""


class CacheError(SyncError):
    """Local cache directory could not be read or written."""


# --------------------------------------------------------------------------
# Command line


class UsageError(ClevaError):
    """Command line could not be parsed; carries the usage text."""

    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage

