"""
Normalized forecasting error codes (taxonomy).

Defines the `ErrorCode` enumeration used across the data, model, training and
service layers. Values are lowercase snake_case and are considered a stable
public contract for logging and run reports.
"""
from __future__ import annotations

from enum import Enum


class ErrorCode(str, Enum):
    """Enumerated normalized error codes representing failure categories."""

    CONFIGURATION = "configuration"
    USAGE = "usage"
    LOAD = "load"
    NOT_FOUND = "not_found"
    DIVERGENCE = "divergence"
    VALIDATION = "validation"
    INTERNAL = "internal"
    UNKNOWN = "unknown"


__all__ = ["ErrorCode"]
