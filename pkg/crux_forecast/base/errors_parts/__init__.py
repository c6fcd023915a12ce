"""Errors parts package public surface.

Re-exports individual error taxonomy components for optional direct imports.
Prefer importing from `crux_forecast.base.errors` for the stable surface.
"""

from .error_code import ErrorCode
from .forecast_error import ForecastError
from .classification import classify_exception

__all__ = ["ErrorCode", "ForecastError", "classify_exception"]
