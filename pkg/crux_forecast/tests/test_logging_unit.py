"""Focused tests for crux_forecast.base.logging.

Covers:
- level parsing and the FORECAST_LOG_LEVEL override
- normalized_log_event required keys and error_code omission
- configure_logger file handler management
- NumPy values in event fields and JSON hoisting in the formatter
"""
from __future__ import annotations

import json
import logging

import numpy as np

from crux_forecast.base.logging import (
    REQUIRED_NORMALIZED_KEYS,
    JsonFormatter,
    LogContext,
    _parse_level,  # type: ignore[attr-defined]
    configure_logger,
    get_logger,
    log_event,
    normalized_log_event,
)


class _ListHandler(logging.Handler):
    """Capture log records into a list for assertions."""

    def __init__(self) -> None:
        super().__init__(level=logging.DEBUG)
        self.messages: list[str] = []

    def emit(self, record: logging.LogRecord) -> None:  # pragma: no cover - exercised via tests
        self.messages.append(record.getMessage())


def test_parse_level_variants():
    assert _parse_level(None) == logging.INFO  # nosec B101
    assert _parse_level("debug") == logging.DEBUG  # nosec B101
    assert _parse_level("WARN") == logging.WARNING  # nosec B101
    assert _parse_level("bogus", default=logging.ERROR) == logging.ERROR  # nosec B101


def test_get_logger_env_overrides_level(monkeypatch, capsys):
    monkeypatch.setenv("FORECAST_LOG_LEVEL", "ERROR")
    logger = get_logger(name="forecast.test.env", json_mode=True, level=logging.DEBUG)
    logger.info("hello")
    assert capsys.readouterr().err == ""  # nosec B101
    logger.error("fail")
    data = json.loads(capsys.readouterr().err.strip())
    assert data["level"] == "ERROR"  # nosec B101


def test_log_event_merges_context_and_drops_none():
    logger = get_logger("forecast.test.event", json_mode=False)
    handler = _ListHandler()
    logger.handlers[:] = [handler]
    ctx = LogContext(dataset="ETTh1", model="msmixer", horizon=96, extra={"variant": None})
    log_event(logger, "run.start", ctx, seed=42, out_dir=None)
    payload = json.loads(handler.messages[-1])
    assert payload == {  # nosec B101
        "event": "run.start",
        "dataset": "ETTh1",
        "model": "msmixer",
        "horizon": 96,
        "seed": 42,
    }


def test_normalized_log_event_required_keys():
    logger = get_logger("forecast.test.normalized", json_mode=False)
    handler = _ListHandler()
    logger.handlers[:] = [handler]
    normalized_log_event(logger, "train.epoch", LogContext(dataset="d"), phase="epoch", epoch=3, lr=None, val_loss=0.5)
    payload = json.loads(handler.messages[-1])
    for key in REQUIRED_NORMALIZED_KEYS:
        assert key in payload  # nosec B101
    assert payload["lr"] is None  # nosec B101
    assert "error_code" not in payload  # nosec B101
    assert payload["val_loss"] == 0.5  # nosec B101


def test_normalized_log_event_extra_cannot_clobber_phase():
    logger = get_logger("forecast.test.clobber", json_mode=False)
    handler = _ListHandler()
    logger.handlers[:] = [handler]
    normalized_log_event(logger, "train.error", phase="train", error_code="divergence", epoch=2)
    payload = json.loads(handler.messages[-1])
    assert payload["error_code"] == "divergence"  # nosec B101
    assert payload["phase"] == "train"  # nosec B101


def test_configure_logger_attaches_and_removes_file_handler(tmp_path):
    path = tmp_path / "logs" / "run.log"
    logger = configure_logger(level="DEBUG", file_path=str(path), logger_name="forecast.test.file")
    managed = [h for h in logger.handlers if getattr(h, "_forecast_file_handler", False)]
    assert len(managed) == 1  # nosec B101
    assert logger.level == logging.DEBUG  # nosec B101
    log_event(logger, "cli.start", command="train")
    for h in managed:
        h.flush()
    line = path.read_text(encoding="utf-8").strip().splitlines()[-1]
    assert json.loads(line)["event"] == "cli.start"  # nosec B101
    configure_logger(file_path=None, logger_name="forecast.test.file")
    assert not [h for h in logger.handlers if getattr(h, "_forecast_file_handler", False)]  # nosec B101


def test_log_event_serializes_numpy_values():
    logger = get_logger("forecast.test.numpy", json_mode=False)
    handler = _ListHandler()
    logger.handlers[:] = [handler]
    log_event(logger, "train.epoch", val_loss=np.float32(0.25), gates=np.array([0.5, 0.5]), epoch=np.int64(3))
    payload = json.loads(handler.messages[-1])
    assert payload["val_loss"] == 0.25 and payload["gates"] == [0.5, 0.5] and payload["epoch"] == 3  # nosec B101


def test_formatter_hoists_event_fields():
    fmt = JsonFormatter()
    event = logging.LogRecord("x", logging.INFO, "", 0, json.dumps({"event": "run.start", "seed": 1}), (), None)
    plain = logging.LogRecord("x", logging.WARNING, "", 0, "hello %s", ("there",), None)
    out = json.loads(fmt.format(event))
    assert out["event"] == "run.start" and out["seed"] == 1 and "msg" not in out  # nosec B101
    assert json.loads(fmt.format(plain))["msg"] == "hello there"  # nosec B101
