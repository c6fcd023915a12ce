"""AdamW with bias correction and decoupled weight decay.

Update per parameter ``theta`` with gradient ``g`` at step ``t``::

    m <- b1 m + (1 - b1) g
    v <- b2 v + (1 - b2) g^2
    theta <- theta (1 - lr wd) - lr m_hat / (sqrt(v_hat) + eps)

Decay applies to every parameter, including RevIN affine terms and the
gate, blend and fusion scalars.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from ..base.errors import usage_error
from ..config import defaults as D
from ..numerics import ParamStore


@dataclass
class AdamWState:
    """Moments and hyperparameters of one optimizer.

    ``lr`` is mutable so the plateau scheduler can lower it between epochs.
    """

    lr: float = D.LR
    weight_decay: float = D.WEIGHT_DECAY
    betas: Tuple[float, float] = D.ADAM_BETAS
    eps: float = D.ADAM_EPS
    step_count: int = 0
    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)


class AdamW:
    """Stateful optimizer bound to one :class:`ParamStore`."""

    def __init__(
        self,
        params: ParamStore,
        lr: float = D.LR,
        weight_decay: float = D.WEIGHT_DECAY,
        betas: Tuple[float, float] = D.ADAM_BETAS,
        eps: float = D.ADAM_EPS,
    ) -> None:
        self.params = params
        self.state = AdamWState(lr=lr, weight_decay=weight_decay, betas=tuple(betas), eps=eps)
        for p in params:
            self.state.m[p.name] = np.zeros_like(p.value)
            self.state.v[p.name] = np.zeros_like(p.value)

    @property
    def lr(self) -> float:
        return self.state.lr

    @lr.setter
    def lr(self, value: float) -> None:
        self.state.lr = value

    def step(self) -> None:
        adamw_step(self.params, self.state)


def adamw_step(params: ParamStore, state: AdamWState) -> None:
    """Apply one AdamW update in place.

    Failure Modes
    -------------
    - Gradients not populated by a backward pass since the last
      ``zero_grad``: usage error.
    """
    if not params.grad_ready:
        raise usage_error("optim", "optimizer step before any backward pass", field="grad")
    b1, b2 = state.betas
    state.step_count += 1
    t = state.step_count
    c1 = 1.0 - b1**t
    c2 = 1.0 - b2**t
    decay = 1.0 - state.lr * state.weight_decay
    for p in params:
        m = state.m.setdefault(p.name, np.zeros_like(p.value))
        v = state.v.setdefault(p.name, np.zeros_like(p.value))
        m *= b1
        m += (1.0 - b1) * p.grad
        v *= b2
        v += (1.0 - b2) * p.grad * p.grad
        p.value *= decay
        p.value -= state.lr * (m / c1) / (np.sqrt(v / c2) + state.eps)


__all__ = ["AdamW", "AdamWState", "adamw_step"]
