"""Versioned checkpoint files.

A checkpoint is a ``numpy`` ``.npz`` archive with one array per parameter
(keyed by name) plus a ``__meta__`` JSON string::

    {"format_version": 1, "kind": "msmixer", "dtype": "float64",
     "config": {...ModelConfig...}, "order": [...], "shapes": {...}}
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict

import numpy as np
from pydantic import ValidationError

from ..base.errors import ErrorCode, ForecastError
from ..numerics import Rng
from .factory import build_model
from .interfaces import ForecastModel
from .model_config import ModelConfig

FORMAT_VERSION = 1
META_KEY = "__meta__"


def _load_error(path: Path, message: str) -> ForecastError:
    return ForecastError(ErrorCode.LOAD, f"checkpoint {path.name}: {message}", "models", field=str(path))


def save_checkpoint(model: ForecastModel, path: str | Path) -> Path:
    """Write ``model`` to ``path`` (exact path, no suffix added)."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    meta: Dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "kind": model.kind,
        "dtype": str(model.params.dtype),
        "config": model.config.model_dump(mode="json"),
        "order": model.params.names(),
        "shapes": {name: list(shape) for name, shape in model.params.shapes()},
    }
    arrays = {p_.name: p_.value for p_ in model.params}
    with p.open("wb") as fh:
        np.savez(fh, **{META_KEY: np.array(json.dumps(meta, sort_keys=True))}, **arrays)
    return p


def load_checkpoint(path: str | Path) -> ForecastModel:
    """Rebuild a model from a checkpoint written by :func:`save_checkpoint`.

    Failure Modes
    -------------
    - Missing file: ``NOT_FOUND``.
    - Unknown format version, mismatched names or shapes, bad config: ``LOAD``.
    """
    p = Path(path)
    if not p.is_file():
        raise ForecastError(ErrorCode.NOT_FOUND, f"checkpoint not found: {p}", "models", field=str(p))
    with np.load(p, allow_pickle=False) as archive:
        if META_KEY not in archive.files:
            raise _load_error(p, "missing metadata")
        meta = json.loads(str(archive[META_KEY]))
        if meta.get("format_version") != FORMAT_VERSION:
            raise _load_error(p, f"unsupported format version {meta.get('format_version')!r}")
        try:
            config = ModelConfig(**meta["config"])
        except (ValidationError, KeyError, TypeError) as exc:
            raise _load_error(p, f"invalid model config: {exc}") from exc
        model = build_model(config, Rng(0), dtype=np.dtype(meta.get("dtype", "float64")))
        if model.params.names() != list(meta.get("order", [])):
            raise _load_error(p, "parameter names differ from the model layout")
        state = {name: archive[name] for name in model.params.names() if name in archive.files}
    try:
        model.params.restore(state)
    except ForecastError as exc:
        raise _load_error(p, exc.message) from exc
    return model


__all__ = ["FORMAT_VERSION", "save_checkpoint", "load_checkpoint"]
