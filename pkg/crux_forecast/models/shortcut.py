"""Linear trend/seasonal shortcut on the full-resolution window.

The window is split by a replicate-padded moving average into trend ``t`` and
seasonal residual ``x - t``; each part is projected T -> H with its own
weights and bias. With ``blend=True`` the two projections are mixed by
``sigmoid(w)`` of a learnable scalar (MSMixer shortcut); with ``blend=False``
they are summed (the DLinear baseline).
"""
from __future__ import annotations

from typing import Optional

from ..numerics import ParamStore, Rng, Tape, Var, leaf, ops


class DLinearShortcut:
    def __init__(
        self,
        store: ParamStore,
        lookback: int,
        horizon: int,
        kernel: int,
        rng: Optional[Rng],
        init_std: float,
        blend: bool = True,
        prefix: str = "shortcut",
    ) -> None:
        self.kernel = kernel
        self.lookback = lookback
        self.w_t = store.add(f"{prefix}.W_t", (horizon, lookback), "normal", rng, std=init_std)
        self.b_t = store.add(f"{prefix}.b_t", (horizon,), "zeros")
        self.w_s = store.add(f"{prefix}.W_s", (horizon, lookback), "normal", rng, std=init_std)
        self.b_s = store.add(f"{prefix}.b_s", (horizon,), "zeros")
        self.blend_logit = store.add(f"{prefix}.blend_logit", (1,), "zeros") if blend else None

    @property
    def projection_count(self) -> int:
        """Parameters of one projection (``T*H + H``)."""
        return self.w_t.size + self.b_t.size

    @property
    def param_count(self) -> int:
        extra = self.blend_logit.size if self.blend_logit is not None else 0
        return 2 * self.projection_count + extra

    def trend_blend(self) -> Optional[float]:
        if self.blend_logit is None:
            return None
        return float(ops.sigmoid(self.blend_logit.value[0]))

    def forward(self, x: Var, tape: Optional[Tape] = None) -> Var:
        trend, seasonal = ops.decompose(x, self.kernel)
        p_t = ops.linear(trend, leaf(self.w_t, tape), leaf(self.b_t, tape))
        p_s = ops.linear(seasonal, leaf(self.w_s, tape), leaf(self.b_s, tape))
        if self.blend_logit is None:
            return ops.add(p_t, p_s)
        return ops.sigmoid_blend(leaf(self.blend_logit, tape), p_t, p_s)


def shortcut_forward(x: Var, shortcut: DLinearShortcut, tape: Optional[Tape] = None) -> Var:
    return shortcut.forward(x, tape)


__all__ = ["DLinearShortcut", "shortcut_forward"]
