"""
Error classification helpers mapping exceptions to normalized ErrorCode values.

Used by the grid runner and the CLI to record a failure reason for any
exception escaping a run, whether raised by this package or by numpy/pandas.
"""
from __future__ import annotations

from pydantic import ValidationError

from .error_code import ErrorCode
from .forecast_error import ForecastError


def classify_exception(exc: BaseException) -> ErrorCode:
    """Classify an exception into a normalized :class:`ErrorCode`.

    Precedence:
        1. ForecastError passthrough.
        2. Missing files.
        3. Pydantic validation failures.
        4. Floating point faults (numpy ``errstate(all="raise")``).
        5. ``ValueError`` as a configuration problem.
        6. ``UNKNOWN`` fallback.
    """
    if isinstance(exc, ForecastError):
        return exc.code
    if isinstance(exc, FileNotFoundError):
        return ErrorCode.NOT_FOUND
    if isinstance(exc, ValidationError):
        return ErrorCode.VALIDATION
    if isinstance(exc, FloatingPointError):
        return ErrorCode.DIVERGENCE
    if isinstance(exc, ValueError):
        return ErrorCode.CONFIGURATION
    return ErrorCode.UNKNOWN


__all__ = ["classify_exception"]
