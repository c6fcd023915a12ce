"""MSMixer: multi-scale MLP branches fused with a linear shortcut.

Pipeline on (B*N, T) rows:

1. RevIN normalize (per row, learnable per-variate affine).
2. Per scale ``s``: average-pool by ``s`` and apply a two-layer GELU MLP.
3. Softmax-gated sum of the branch outputs (multi-scale pathway).
4. Trend/seasonal linear shortcut on the normalized full-resolution window.
5. Fusion ``alpha * multi_scale + (1 - alpha) * shortcut`` with
   ``alpha = sigmoid(fusion logit)``.
6. RevIN denormalize.

Parameter registration order (fixed for a configuration, so seeded draws are
reproducible): ``revin.*``, ``branch{s}.*`` per scale, ``gate.logits``,
``shortcut.*``, ``fusion.logit``.
"""
from __future__ import annotations

from typing import Dict, List, Optional

import numpy as np

from ..base.errors import config_error
from ..data.windows import from_rows, to_rows
from ..numerics import ParamStore, Rng, Tape, Var, constant, leaf, ops
from .branch import ScaleBranch
from .gate import ScaleGate
from .model_config import ModelConfig
from .revin import RevIN
from .shortcut import DLinearShortcut


class MSMixer:
    """Multi-scale mixer forecaster.

    Parameters
    ----------
    config: ModelConfig
        ``kind`` must be ``"msmixer"``.
    rng: Optional[Rng]
        Source of the weight initialization draws.
    dtype: numpy dtype
        Parameter storage dtype.

    Notes
    -----
    ``use_shortcut=False`` drops the fusion scalar only; the shortcut weights
    are still registered (and counted) but never reached by the forward pass.
    ``use_revin=False`` removes the 2N affine parameters and the per-window
    statistics; dataset-level z-scoring still applies upstream.
    """

    kind = "msmixer"

    def __init__(self, config: ModelConfig, rng: Optional[Rng], dtype: np.dtype | type = np.float64) -> None:
        if config.kind != "msmixer":
            raise config_error("models", f"MSMixer cannot build kind {config.kind!r}", field="kind")
        self.config = config
        self.params = ParamStore(dtype=dtype, rng_seed=rng.seed if rng is not None else None)
        c = config
        self.revin = RevIN(self.params, c.n_variates, c.revin_eps) if c.use_revin else None
        self.branches: List[ScaleBranch] = [
            ScaleBranch(self.params, s, c.lookback, c.hidden, c.horizon, c.dropout, rng, c.init_std)
            for s in c.scales
        ]
        self.gate = ScaleGate(self.params, c.scales)
        self.shortcut = DLinearShortcut(self.params, c.lookback, c.horizon, c.kernel, rng, c.init_std, blend=True)
        self.fusion = self.params.add("fusion.logit", (1,), "zeros") if c.use_shortcut else None

    def multi_scale(self, x_hat: Var, tape: Optional[Tape] = None, training: bool = False, rng: Optional[Rng] = None) -> Var:
        """Gated sum of the branch outputs for normalized rows."""
        outputs = [b.forward(x_hat, tape, training, rng) for b in self.branches]
        return self.gate.merge(outputs, tape)

    def forward(
        self,
        x_rows: np.ndarray,
        tape: Optional[Tape] = None,
        training: bool = False,
        rng: Optional[Rng] = None,
    ) -> Var:
        c = self.config
        if x_rows.ndim != 2 or x_rows.shape[1] != c.lookback:
            raise config_error("models", f"expected (B*N, {c.lookback}) rows, got {x_rows.shape}", field="lookback")
        if x_rows.shape[0] % c.n_variates:
            raise config_error("models", f"{x_rows.shape[0]} rows is not a multiple of N={c.n_variates}", field="n_variates")
        x = constant(x_rows, tape)
        stats = None
        if self.revin is not None:
            x, stats = self.revin.normalize(x, tape)
        z = self.multi_scale(x, tape, training, rng)
        if self.fusion is not None:
            z = ops.sigmoid_blend(leaf(self.fusion, tape), z, self.shortcut.forward(x, tape))
        if self.revin is not None:
            z = self.revin.denormalize(z, stats)
        return z

    def fusion_alpha(self) -> Optional[float]:
        if self.fusion is None:
            return None
        return float(ops.sigmoid(self.fusion.value[0]))

    def gate_weights(self) -> Dict[int, float]:
        return self.gate.weights_by_scale()

    def trend_blend(self) -> Optional[float]:
        return self.shortcut.trend_blend()

    def breakdown(self) -> Dict[str, int]:
        rows: Dict[str, int] = {}
        if self.revin is not None:
            rows["revin"] = self.revin.param_count
        for b in self.branches:
            rows[f"branch s={b.scale}"] = b.param_count
        rows["gate"] = self.gate.param_count
        rows["shortcut trend"] = self.shortcut.projection_count
        rows["shortcut season"] = self.shortcut.projection_count
        rows["trend blend"] = 1
        if self.fusion is not None:
            rows["fusion"] = 1
        return rows


def msmixer_forward(
    x_btn: np.ndarray,
    model: MSMixer,
    training: bool = False,
    rng: Optional[Rng] = None,
    tape: Optional[Tape] = None,
) -> np.ndarray:
    """Forecast (B, H, N) from (B, T, N) windows."""
    out = model.forward(to_rows(np.asarray(x_btn, dtype=model.params.dtype)), tape, training, rng)
    return from_rows(out.value, model.config.n_variates)


__all__ = ["MSMixer", "msmixer_forward"]
