"""Exception hierarchy.

Every failure the pipeline can diagnose gets its own type so callers (and the
CLI's exit-code mapping) can tell user error, missing data, and genuine
mathematical obstructions apart.
"""

from __future__ import annotations


class QfermatError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(QfermatError, ValueError):
    """A precondition on user-supplied input was violated."""


class InfiniteValuationError(QfermatError, ZeroDivisionError):
    """Valuation of zero requested (it would be +infinity)."""


class BadReductionError(QfermatError):
    """A curve was reduced at a prime where its discriminant vanishes."""


class FactorizationIncompleteError(QfermatError):
    """An operation required a full factorization but only a partial one
    was available within the effort budget."""


class MissingCoefficientError(QfermatError, KeyError):
    """An eigenvalue a_n beyond the stored coefficient range was requested."""


class DataUnavailableError(QfermatError):
    """Newform data could not be obtained (no network, no cache, no bundle)."""


class ParseError(QfermatError):
    """Serialized newform data was malformed; the message names the field."""


class TamperedDataError(ParseError):
    """Bundled or cached data failed an integrity check."""


class InvariantViolationError(QfermatError):
    """Loaded data breaks a structural invariant; the message names the
    record and the invariant."""


class CalibrationError(QfermatError):
    """A cross-check between two independently computed quantities failed.

    Raised when ingested data is internally inconsistent (Hasse bound
    violations, broken multiplicativity) or when a dual-route computation
    disagrees with itself.  Never caught by the pipeline: it means the
    inputs cannot be trusted, so no proof should be emitted.
    """


class MethodInapplicableError(QfermatError):
    """The proof method does not apply to the requested input (as opposed
    to failing on it)."""
