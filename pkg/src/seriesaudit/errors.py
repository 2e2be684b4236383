"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SeriesAuditError(Exception):
    """Base class for all package errors."""


class NonPositiveFactor(SeriesAuditError):
    """A linear factor a*n + b with a + b <= 0 (pole or sign change at some n >= 1)."""


class ZeroNumerator(SeriesAuditError):
    """Summand numerator must be nonzero."""


class DivergentSeries(SeriesAuditError):
    """Series of total degree < 2 (or nonzero residue sum) has no finite value."""


class NonPositiveArgument(SeriesAuditError):
    """Polygamma functions are only evaluated for rational arguments > 0."""


class PrecisionCapExceeded(SeriesAuditError):
    """Working precision escalation hit the configured bit cap."""


class UnsupportedModulus(SeriesAuditError):
    """Gauss digamma closed forms cover q | 24 only; callers fall back to a numeric atom."""


class UnknownSeriesId(SeriesAuditError):
    """Identity id not present in the registry."""


class OddArgument(SeriesAuditError):
    """odd_window_sum requires an even window end."""


class ParseError(SeriesAuditError):
    """Surface-syntax parse failure with source location."""

    def __init__(self, message: str, offset: int, expected: str | None = None):
        self.offset = offset
        self.expected = expected
        super().__init__(f"{message} at offset {offset}" + (f" (expected {expected})" if expected else ""))
