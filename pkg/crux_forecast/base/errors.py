"""Unified forecasting error taxonomy public surface.

This module re-exports the one-class-per-file implementations under
``crux_forecast.base.errors_parts`` to keep a stable import path.
"""

from .errors_parts.error_code import ErrorCode
from .errors_parts.forecast_error import ForecastError
from .errors_parts.classification import classify_exception


def config_error(component: str, message: str, field: str | None = None) -> ForecastError:
    """Build a ``CONFIGURATION`` error (shape mismatch, infeasible window, bad flag)."""
    return ForecastError(ErrorCode.CONFIGURATION, message, component, field=field)


def usage_error(component: str, message: str, field: str | None = None) -> ForecastError:
    """Build a ``USAGE`` error (calls made in the wrong order)."""
    return ForecastError(ErrorCode.USAGE, message, component, field=field)


__all__ = ["ErrorCode", "ForecastError", "classify_exception", "config_error", "usage_error"]
