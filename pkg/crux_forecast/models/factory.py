"""Model factory: map a :class:`ModelConfig` kind onto its class."""
from __future__ import annotations

from typing import Dict, Optional, Type

import numpy as np

from ..base.errors import config_error
from ..numerics import Rng
from .baselines import DLinear, NLinear
from .interfaces import ForecastModel
from .model_config import ModelConfig
from .msmixer import MSMixer

_MODELS: Dict[str, Type] = {"msmixer": MSMixer, "dlinear": DLinear, "nlinear": NLinear}


def build_model(config: ModelConfig, rng: Optional[Rng], dtype: np.dtype | type = np.float64) -> ForecastModel:
    """Construct a model, drawing initial weights from ``rng``.

    Failure Modes
    -------------
    Unknown ``kind``: configuration error.
    """
    cls = _MODELS.get(config.kind)
    if cls is None:
        raise config_error("models", f"unknown model kind {config.kind!r}", field="kind")
    return cls(config, rng, dtype)


def known_kinds() -> tuple[str, ...]:
    return tuple(_MODELS)


__all__ = ["build_model", "known_kinds"]
