"""Reversible instance normalization.

Each (sample, variate) row is standardized by its own window mean and
population std, then scaled and shifted by learnable per-variate ``gamma`` and
``beta``. The window statistics are treated as constants for gradients.

``normalize`` returns a :class:`RevINStats` handle that exactly one
``denormalize`` call consumes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..base.errors import config_error, usage_error
from ..numerics import ParamStore, Tape, Var, leaf, ops


@dataclass
class RevINStats:
    """Per-row statistics of one normalize call plus the tiled affine terms."""

    mean: np.ndarray
    std_eps: np.ndarray
    gamma_rows: Var
    beta_rows: Var
    consumed: bool = False


class RevIN:
    """Learnable affine instance normalization over ``n_variates`` channels."""

    def __init__(self, store: ParamStore, n_variates: int, eps: float, prefix: str = "revin") -> None:
        self.n_variates = n_variates
        self.eps = eps
        self.gamma = store.add(f"{prefix}.gamma", (n_variates,), "ones")
        self.beta = store.add(f"{prefix}.beta", (n_variates,), "zeros")

    @property
    def param_count(self) -> int:
        return self.gamma.size + self.beta.size

    def normalize(self, x: Var, tape: Optional[Tape] = None) -> Tuple[Var, RevINStats]:
        """``((x - mu) / (sigma + eps)) * gamma + beta`` per row."""
        rows = x.shape[0]
        if rows % self.n_variates:
            raise config_error("models", f"{rows} rows is not a multiple of {self.n_variates} variates", field="n_variates")
        repeats = rows // self.n_variates
        mean = x.value.mean(axis=1, keepdims=True)
        std_eps = x.value.std(axis=1, keepdims=True) + self.eps
        centred = ops.affine_const(x, 1.0 / std_eps, -mean / std_eps)
        gamma_rows = ops.tile_rows(leaf(self.gamma, tape), repeats)
        beta_rows = ops.tile_rows(leaf(self.beta, tape), repeats)
        out = ops.row_affine(centred, gamma_rows, beta_rows)
        return out, RevINStats(mean=mean, std_eps=std_eps, gamma_rows=gamma_rows, beta_rows=beta_rows)

    def denormalize(self, z: Var, stats: Optional[RevINStats]) -> Var:
        """Inverse map ``((z - beta) / gamma) * (sigma + eps) + mu``.

        The division by ``gamma`` is guarded by ``eps**2``.
        """
        if stats is None or stats.consumed:
            raise usage_error("models", "denormalize needs the statistics of a fresh normalize call", field="revin")
        if z.shape[0] != stats.mean.shape[0]:
            raise config_error("models", f"denormalize rows {z.shape[0]} != normalized rows {stats.mean.shape[0]}", field="revin")
        stats.consumed = True
        unscaled = ops.row_affine_inverse(z, stats.gamma_rows, stats.beta_rows, guard=self.eps * self.eps)
        return ops.affine_const(unscaled, stats.std_eps, stats.mean)


__all__ = ["RevIN", "RevINStats"]
