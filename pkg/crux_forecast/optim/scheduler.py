"""Reduce-on-plateau learning-rate schedule driven by validation loss."""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..config import defaults as D


@dataclass
class PlateauScheduler:
    """Halve ``lr`` after more than ``patience`` epochs without improvement.

    Improvement is strict (``loss < best``); ties count as bad epochs. There
    is no minimum learning rate.
    """

    lr: float
    factor: float = D.PLATEAU_FACTOR
    patience: int = D.PLATEAU_PATIENCE
    best: float = math.inf
    bad_epochs: int = 0
    reductions: int = 0

    def step(self, val_loss: float) -> float:
        if val_loss < self.best:
            self.best = val_loss
            self.bad_epochs = 0
            return self.lr
        self.bad_epochs += 1
        if self.bad_epochs > self.patience:
            self.lr *= self.factor
            self.bad_epochs = 0
            self.reductions += 1
        return self.lr


def scheduler_step(sched: PlateauScheduler, val_loss: float) -> float:
    """Record one epoch's validation loss and return the (possibly reduced) lr."""
    return sched.step(val_loss)


__all__ = ["PlateauScheduler", "scheduler_step"]
