"""
Structured forecasting error exception type.

Wraps configuration, usage, load and numerical failures with a normalized
`ErrorCode` so the CLI and the grid runner can report them uniformly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .error_code import ErrorCode


@dataclass
class ForecastError(Exception):
    """Represents a structured error with a normalized error code.

    Attributes:
        code: Normalized :class:`ErrorCode` classification for the failure.
        message: Human-readable error message suitable for logging.
        component: Package area where the error originated (``"data"``,
            ``"models"``, ``"trainer"`` ...).
        field: Optional name of the offending field, flag, row or path.
        raw: Optional original exception for diagnostics.
    """

    code: ErrorCode
    message: str
    component: str
    field: Optional[str] = None
    raw: Optional[Exception] = None

    def __str__(self) -> str:  # pragma: no cover - trivial
        """Return a compact string combining component, field, code, and message."""
        where = f"{self.component}:{self.field}" if self.field else self.component
        return f"{where} {self.code.value}: {self.message}"


__all__ = ["ForecastError"]
