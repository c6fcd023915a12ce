"""One scale branch: average pooling by ``s`` then a two-layer GELU MLP."""
from __future__ import annotations

from typing import Optional

from ..base.errors import config_error
from ..numerics import ParamStore, Rng, Tape, Var, leaf, ops


class ScaleBranch:
    """``W2 . dropout(GELU(W1 . pool_s(x) + b1)) + b2``.

    Registers ``W1`` (d, T/s), ``b1`` (d,), ``W2`` (H, d), ``b2`` (H,) so the
    branch holds ``d*(T/s) + d + H*d + H`` parameters.
    """

    def __init__(
        self,
        store: ParamStore,
        scale: int,
        lookback: int,
        hidden: int,
        horizon: int,
        dropout: float,
        rng: Optional[Rng],
        init_std: float,
        prefix: Optional[str] = None,
    ) -> None:
        if scale < 1 or lookback % scale:
            raise config_error("models", f"scale {scale} must divide lookback {lookback}", field="scales")
        self.scale = scale
        self.width = lookback // scale
        self.dropout = dropout
        name = prefix or f"branch{scale}"
        self.w1 = store.add(f"{name}.W1", (hidden, self.width), "normal", rng, std=init_std)
        self.b1 = store.add(f"{name}.b1", (hidden,), "zeros")
        self.w2 = store.add(f"{name}.W2", (horizon, hidden), "normal", rng, std=init_std)
        self.b2 = store.add(f"{name}.b2", (horizon,), "zeros")

    @property
    def param_count(self) -> int:
        return self.w1.size + self.b1.size + self.w2.size + self.b2.size

    def mlp(self, pooled: Var, tape: Optional[Tape] = None, training: bool = False, rng: Optional[Rng] = None) -> Var:
        """Apply the MLP to already pooled rows of width ``T/s``."""
        if pooled.shape[1] != self.width:
            raise config_error(
                "models", f"branch {self.scale}: input width {pooled.shape[1]} != {self.width}", field="width"
            )
        h = ops.gelu(ops.linear(pooled, leaf(self.w1, tape), leaf(self.b1, tape)))
        h = ops.dropout(h, self.dropout, training, rng)
        return ops.linear(h, leaf(self.w2, tape), leaf(self.b2, tape))

    def forward(self, x: Var, tape: Optional[Tape] = None, training: bool = False, rng: Optional[Rng] = None) -> Var:
        return self.mlp(ops.avg_pool(x, self.scale), tape, training, rng)


def branch_forward(
    x_pooled: Var,
    branch: ScaleBranch,
    training: bool = False,
    rng: Optional[Rng] = None,
    tape: Optional[Tape] = None,
) -> Var:
    """Functional form of :meth:`ScaleBranch.mlp`."""
    return branch.mlp(x_pooled, tape, training, rng)


__all__ = ["ScaleBranch", "branch_forward"]
