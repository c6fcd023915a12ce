"""Forecasting model Protocol and layout-aware prediction helper."""
from __future__ import annotations

from typing import Dict, Optional, Protocol, runtime_checkable

import numpy as np

from ..data.windows import from_rows, to_rows
from ..numerics import ParamStore, Rng, Tape, Var
from .model_config import ModelConfig


@runtime_checkable
class ForecastModel(Protocol):
    """Channel-independent forecaster over (B*N, T) rows.

    ``forward`` records onto ``tape`` when one is given; without a tape it is a
    read-only evaluation pass safe to run concurrently on disjoint batches.
    """

    config: ModelConfig
    params: ParamStore

    @property
    def kind(self) -> str:
        ...

    def forward(
        self,
        x_rows: np.ndarray,
        tape: Optional[Tape] = None,
        training: bool = False,
        rng: Optional[Rng] = None,
    ) -> Var:
        """Return (B*N, H) predictions in the input (z-scored) scale."""
        ...

    def breakdown(self) -> Dict[str, int]:
        """Parameter count per module, in registration order."""
        ...


def predict(model: ForecastModel, x_btn: np.ndarray) -> np.ndarray:
    """Evaluate ``model`` on (B, T, N) windows and return (B, H, N) forecasts."""
    rows = to_rows(np.asarray(x_btn, dtype=model.params.dtype))
    out = model.forward(rows, tape=None, training=False)
    return from_rows(out.value, model.config.n_variates)


__all__ = ["ForecastModel", "predict"]
