"""Early stopping with an in-memory best checkpoint."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

import numpy as np

from ..base.errors import usage_error
from ..config import defaults as D
from ..numerics import ParamStore


class StopDecision(str, Enum):
    CONTINUE = "continue"
    STOP = "stop"


@dataclass
class EarlyStopper:
    """Track the best validation loss and the parameters that produced it.

    Attributes
    ----------
    patience: int
        Consecutive non-improving epochs that end training.
    best: float
        Lowest validation loss seen (strict ``<`` improvement).
    best_epoch: Optional[int]
        Epoch of ``best`` (1-based, as passed to :meth:`check`).
    bad_epochs: int
        Non-improving epochs since ``best``.
    """

    patience: int = D.PATIENCE
    best: float = math.inf
    best_epoch: Optional[int] = None
    bad_epochs: int = 0
    _checkpoint: Optional[Dict[str, np.ndarray]] = field(default=None, repr=False)

    @property
    def has_checkpoint(self) -> bool:
        return self._checkpoint is not None

    def check(self, val_loss: float, params: ParamStore, epoch: Optional[int] = None) -> StopDecision:
        if val_loss < self.best:
            self.best = val_loss
            self.best_epoch = epoch
            self.bad_epochs = 0
            self._checkpoint = params.snapshot()
            return StopDecision.CONTINUE
        self.bad_epochs += 1
        return StopDecision.STOP if self.bad_epochs >= self.patience else StopDecision.CONTINUE

    def restore_best(self, params: ParamStore) -> None:
        """Load the best checkpoint back into ``params``."""
        if self._checkpoint is None:
            raise usage_error("optim", "no checkpoint recorded yet", field="checkpoint")
        params.restore(self._checkpoint)


def early_stop_check(
    stopper: EarlyStopper, val_loss: float, params: ParamStore, epoch: Optional[int] = None
) -> StopDecision:
    return stopper.check(val_loss, params, epoch)


__all__ = ["EarlyStopper", "StopDecision", "early_stop_check"]
