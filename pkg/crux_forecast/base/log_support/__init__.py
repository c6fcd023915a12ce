"""Formatter and run context used by :mod:`crux_forecast.base.logging`."""

from .json_formatter import ISO, JsonFormatter
from .logging_context import LogContext

__all__ = ["JsonFormatter", "ISO", "LogContext"]
