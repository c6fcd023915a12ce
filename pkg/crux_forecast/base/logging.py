"""Structured logging utilities for the forecasting package.

One shared logger (``crux_forecast``) emits single-line JSON events to stderr.
Training, data loading and the service layer all log through ``log_event`` or
``normalized_log_event`` so traces can be grepped and aggregated by event name.

Normalized events always carry ``phase``, ``epoch`` and ``lr`` keys (``null``
when unknown); ``error_code`` is present only for failures. NumPy scalars and
arrays in event fields are serialized as plain numbers and lists.
"""
from __future__ import annotations

import contextlib
import json
import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from .log_support import JsonFormatter, LogContext

LOGGER_NAME = "crux_forecast"
LEVEL_ENV = "FORECAST_LOG_LEVEL"
LOG_FILE_MAX_BYTES = 10 * 1024 * 1024
LOG_FILE_BACKUPS = 5
REQUIRED_NORMALIZED_KEYS = ("phase", "epoch", "lr")
_FILE_TAG = "_forecast_file_handler"


def _parse_level(value: str | None, default: int = logging.INFO) -> int:
    """Resolve a level name such as ``"debug"`` or ``"WARN"``; ``default`` when unknown."""
    if not value:
        return default
    resolved = logging.getLevelName(value.strip().upper())
    return resolved if isinstance(resolved, int) else default


def _formatter(json_mode: bool) -> logging.Formatter:
    return JsonFormatter() if json_mode else logging.Formatter("%(asctime)s %(levelname)s %(name)s %(message)s")


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


def get_logger(name: str = LOGGER_NAME, json_mode: bool = True, level: int = logging.INFO) -> logging.Logger:
    """Return the shared structured logger, installing its stderr handler once.

    ``FORECAST_LOG_LEVEL`` overrides ``level`` when set.
    """
    logger = logging.getLogger(name)
    if getattr(logger, "_forecast_ready", False):
        return logger
    effective = _parse_level(os.getenv(LEVEL_ENV), default=level)
    stream = logging.StreamHandler(sys.stderr)
    stream.setFormatter(_formatter(json_mode))
    stream.setLevel(effective)
    logger.setLevel(effective)
    logger.handlers[:] = [stream]
    logger.propagate = False
    logger._forecast_ready = True  # type: ignore[attr-defined]
    return logger


def _file_handlers(logger: logging.Logger) -> list[logging.Handler]:
    return [h for h in logger.handlers if getattr(h, _FILE_TAG, False)]


def _detach(logger: logging.Logger, handler: logging.Handler) -> None:
    logger.removeHandler(handler)
    with contextlib.suppress(Exception):
        handler.close()


def configure_logger(
    *,
    level: int | str | None = None,
    file_path: Optional[str] = None,
    json_mode: bool = True,
    logger_name: str = LOGGER_NAME,
) -> logging.Logger:
    """Apply ``--log-level`` / ``--log-file`` to the shared logger.

    Parameters
    ----------
    level: int | str | None
        Numeric level or name (``"DEBUG"``). ``None`` keeps the current level.
    file_path: Optional[str]
        Rotating log file (parent directories are created). ``None`` detaches
        any file handler installed by an earlier call.
    json_mode: bool
        JSON formatter (default) or plain text.
    logger_name: str
        Logger to configure.

    Returns
    -------
    logging.Logger
        The configured logger. Handlers attached by callers (pytest's
        ``caplog`` for instance) are left in place.
    """
    logger = get_logger(logger_name, json_mode=json_mode)
    if level is not None:
        logger.setLevel(_parse_level(level, default=logger.level) if isinstance(level, str) else level)
        for h in logger.handlers:
            h.setLevel(logger.level)

    target = None if file_path is None else Path(file_path).expanduser().resolve()
    keep: Optional[logging.Handler] = None
    for h in _file_handlers(logger):
        if target is not None and Path(getattr(h, "baseFilename", "")) == target:
            keep = h
        else:
            _detach(logger, h)
    if target is None:
        return logger

    if keep is None:
        target.parent.mkdir(parents=True, exist_ok=True)
        keep = RotatingFileHandler(target, maxBytes=LOG_FILE_MAX_BYTES, backupCount=LOG_FILE_BACKUPS, encoding="utf-8")
        setattr(keep, _FILE_TAG, True)
        logger.addHandler(keep)
    keep.setFormatter(_formatter(json_mode))
    keep.setLevel(logger.level)
    return logger


def log_event(
    logger: logging.Logger,
    event: str,
    ctx: LogContext | None = None,
    *,
    level: int = logging.INFO,
    keep_none: bool = False,
    **fields: Any,
) -> None:
    """Emit one structured JSON event.

    Parameters
    ----------
    logger: logging.Logger
        Logger from :func:`get_logger`.
    event: str
        Dotted event name (``train.epoch``, ``data.warning``).
    ctx: LogContext | None
        Run context merged into the payload.
    level: int
        Logging level for the record.
    keep_none: bool
        Preserve ``None`` valued fields as JSON ``null`` instead of dropping them.
    **fields: Any
        Event fields; NumPy values are converted to plain JSON numbers.
    """
    payload: Dict[str, Any] = {"event": event, **(ctx.to_dict() if ctx else {})}
    payload.update(fields if keep_none else {k: v for k, v in fields.items() if v is not None})
    logger.log(level, json.dumps(payload, ensure_ascii=False, default=_json_default))


def normalized_log_event(
    logger: logging.Logger,
    event: str,
    ctx: LogContext | None = None,
    *,
    phase: str,
    epoch: int | None = None,
    lr: float | None = None,
    error_code: str | None = None,
    **extra_fields: Any,
) -> None:
    """Emit an event guaranteed to carry ``phase``, ``epoch`` and ``lr``.

    Failures (``error_code`` set) log at ERROR. Extra fields never overwrite the
    normalized keys and ``None`` extras are dropped.
    """
    fields: Dict[str, Any] = {k: v for k, v in extra_fields.items() if v is not None}
    fields.update(phase=phase, epoch=epoch, lr=lr)
    if error_code is not None:
        fields["error_code"] = error_code
    log_event(logger, event, ctx, level=logging.ERROR if error_code else logging.INFO, keep_none=True, **fields)


__all__ = [
    "LogContext",
    "LOGGER_NAME",
    "LEVEL_ENV",
    "REQUIRED_NORMALIZED_KEYS",
    "get_logger",
    "configure_logger",
    "log_event",
    "normalized_log_event",
]
