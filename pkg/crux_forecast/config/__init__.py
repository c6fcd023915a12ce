"""Unified configuration layer for forecasting runs.

Goals
-----
* Centralize defaults (model shape, training protocol, grid) in ``defaults``.
* Merge sources in a predictable order (later wins):
    1. Built-in defaults
    2. Optional config file (JSON or flat YAML ``key: value`` lines), given
       explicitly or through ``FORECAST_CONFIG_FILE``
    3. Environment variables ``FORECAST_<KEY>`` (e.g. ``FORECAST_SEED=7``)
    4. In-code overrides (CLI flags)
* Validate the merged mapping once with pydantic so unknown keys and bad
  values fail with a message naming the key.

Config File Example
-------------------
```
lookback: 336
scales: 1,4,16
max_epochs: 15
data_dir: ./data
```

Public API
----------
* ``ForecastSettings``: validated settings model.
* ``get_settings(config_file=None, overrides=None) -> ForecastSettings``
"""
from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Dict, Literal, Mapping, Optional, Tuple

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..base.errors import ErrorCode, ForecastError
from . import defaults as D


def _parse_int_tuple(value: Any) -> Any:
    """Accept ``"1,4,16"``, ``"1 4 16"`` or a sequence of ints."""
    if isinstance(value, str):
        parts = [p for p in value.replace(",", " ").split() if p]
        return tuple(int(p) for p in parts)
    if isinstance(value, int):
        return (value,)
    return value


class ForecastSettings(BaseModel):
    """Validated run settings shared by every CLI command.

    ``train_cap`` of ``None`` means "dataset default" (17,420 for ETTm);
    ``0`` disables the cap.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    data_dir: str = D.DATA_DIR
    out: str = D.OUT_DIR
    workers: int = Field(D.WORKERS, ge=1)
    dtype: Literal["float64", "float32"] = D.DTYPE
    lookback: int = Field(D.LOOKBACK, ge=1)
    hidden: int = Field(D.HIDDEN, ge=1)
    scales: Tuple[int, ...] = D.SCALES
    kernel: int = Field(D.MA_KERNEL, ge=1)
    dropout: float = Field(D.DROPOUT, ge=0.0, lt=1.0)
    lr: float = Field(D.LR, ge=0.0)
    weight_decay: float = Field(D.WEIGHT_DECAY, ge=0.0)
    batch_size: int = Field(D.BATCH_SIZE, ge=1)
    max_epochs: int = Field(D.MAX_EPOCHS, ge=1)
    patience: int = Field(D.PATIENCE, ge=1)
    seed: int = D.SEED
    clip: float = Field(D.CLIP, gt=0.0)
    train_cap: Optional[int] = Field(None, ge=0)
    cross_border: bool = D.CROSS_BORDER_CONTEXT
    log_level: Optional[str] = None
    log_file: Optional[str] = None

    @field_validator("scales", mode="before")
    @classmethod
    def _coerce_scales(cls, value: Any) -> Any:
        return _parse_int_tuple(value)

    @field_validator("train_cap", mode="before")
    @classmethod
    def _coerce_train_cap(cls, value: Any) -> Any:
        if isinstance(value, str) and value.strip().lower() in {"", "none", "default"}:
            return None
        return value

    @field_validator("scales")
    @classmethod
    def _check_scales(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if not value or any(s < 1 for s in value):
            raise ValueError("scales must be a non-empty list of positive integers")
        if len(set(value)) != len(value):
            raise ValueError("scales must be distinct")
        return tuple(value)

    def train_cap_for(self, dataset: str) -> Optional[int]:
        """Resolve the effective train cap for ``dataset``."""
        if self.train_cap is None:
            return D.train_cap_for(dataset)
        return self.train_cap or None


def _load_config_file(path: str | os.PathLike[str]) -> Dict[str, Any]:
    """Read a JSON or flat YAML config file into a mapping.

    Failure Modes
    -------------
    - Missing file: ``NOT_FOUND`` error naming the path.
    - Unparseable text or a non-mapping document: ``CONFIGURATION`` error.
    """
    p = Path(path).expanduser()
    if not p.is_file():
        raise ForecastError(ErrorCode.NOT_FOUND, f"config file not found: {p}", "config", field=str(p))
    text = p.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        try:
            data = yaml.safe_load(text) or {}
        except yaml.YAMLError as exc:
            raise ForecastError(
                ErrorCode.CONFIGURATION, f"cannot parse config file: {exc}", "config", field=str(p), raw=exc
            ) from exc
    if not isinstance(data, dict):
        raise ForecastError(ErrorCode.CONFIGURATION, "config file must hold key: value pairs", "config", field=str(p))
    return {str(k).replace("-", "_"): v for k, v in data.items()}


def _env_overrides(environ: Mapping[str, str]) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for name in ForecastSettings.model_fields:
        val = environ.get(f"{D.ENV_PREFIX}{name.upper()}")
        if val is not None:
            out[name] = val
    return out


def get_settings(
    config_file: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> ForecastSettings:
    """Return merged, validated settings.

    Merge order (later wins): defaults -> config file -> env vars -> overrides.
    ``None`` valued overrides are ignored so unset CLI flags fall through.

    Failure Modes
    -------------
    Unknown keys or invalid values raise a ``VALIDATION`` :class:`ForecastError`
    whose ``field`` names the first offending key.
    """
    env = os.environ if environ is None else environ
    merged: Dict[str, Any] = {}
    path = config_file or env.get(D.CONFIG_FILE_ENV)
    if path:
        merged |= _load_config_file(path)
    merged |= _env_overrides(env)
    if overrides:
        merged |= {k: v for k, v in overrides.items() if v is not None}
    try:
        return ForecastSettings(**merged)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = ".".join(str(part) for part in first.get("loc", ())) or None
        raise ForecastError(
            ErrorCode.VALIDATION, f"invalid setting {key!r}: {first.get('msg')}", "config", field=key, raw=exc
        ) from exc


__all__ = ["ForecastSettings", "get_settings"]
