"""Linear baselines evaluated directly on z-scored windows (no RevIN).

- ``DLinear``: moving-average decomposition, ``W_t t + b_t + W_s s + b_s``.
- ``NLinear``: subtract the last observed value per row, one T -> H linear
  map, add the value back.
"""
from __future__ import annotations

from typing import Dict, Optional

import numpy as np

from ..base.errors import config_error
from ..data.windows import from_rows, to_rows
from ..numerics import ParamStore, Rng, Tape, Var, constant, leaf, ops
from .model_config import ModelConfig
from .shortcut import DLinearShortcut


def _check_rows(config: ModelConfig, x_rows: np.ndarray) -> None:
    if x_rows.ndim != 2 or x_rows.shape[1] != config.lookback:
        raise config_error("models", f"expected (B*N, {config.lookback}) rows, got {x_rows.shape}", field="lookback")


class DLinear:
    kind = "dlinear"

    def __init__(self, config: ModelConfig, rng: Optional[Rng], dtype: np.dtype | type = np.float64) -> None:
        if config.kind != "dlinear":
            raise config_error("models", f"DLinear cannot build kind {config.kind!r}", field="kind")
        self.config = config
        self.params = ParamStore(dtype=dtype, rng_seed=rng.seed if rng is not None else None)
        self.shortcut = DLinearShortcut(
            self.params, config.lookback, config.horizon, config.kernel, rng, config.init_std, blend=False, prefix="dlinear"
        )

    def forward(self, x_rows: np.ndarray, tape: Optional[Tape] = None, training: bool = False, rng: Optional[Rng] = None) -> Var:
        _check_rows(self.config, x_rows)
        return self.shortcut.forward(constant(x_rows, tape), tape)

    def breakdown(self) -> Dict[str, int]:
        return {"trend": self.shortcut.projection_count, "season": self.shortcut.projection_count}


class NLinear:
    kind = "nlinear"

    def __init__(self, config: ModelConfig, rng: Optional[Rng], dtype: np.dtype | type = np.float64) -> None:
        if config.kind != "nlinear":
            raise config_error("models", f"NLinear cannot build kind {config.kind!r}", field="kind")
        self.config = config
        self.params = ParamStore(dtype=dtype, rng_seed=rng.seed if rng is not None else None)
        self.w = self.params.add("nlinear.W", (config.horizon, config.lookback), "normal", rng, std=config.init_std)
        self.b = self.params.add("nlinear.b", (config.horizon,), "zeros")

    def forward(self, x_rows: np.ndarray, tape: Optional[Tape] = None, training: bool = False, rng: Optional[Rng] = None) -> Var:
        _check_rows(self.config, x_rows)
        last = x_rows[:, -1:]
        centred = ops.affine_const(constant(x_rows, tape), 1.0, -last)
        y = ops.linear(centred, leaf(self.w, tape), leaf(self.b, tape))
        return ops.affine_const(y, 1.0, last)

    def breakdown(self) -> Dict[str, int]:
        return {"linear": self.w.size + self.b.size}


def baseline_forward(x_btn: np.ndarray, model: DLinear | NLinear) -> np.ndarray:
    """Forecast (B, H, N) from (B, T, N) windows."""
    out = model.forward(to_rows(np.asarray(x_btn, dtype=model.params.dtype)))
    return from_rows(out.value, model.config.n_variates)


__all__ = ["DLinear", "NLinear", "baseline_forward"]
