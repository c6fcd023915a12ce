"""Point-forecast error metrics in z-scored space."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..base.errors import config_error


@dataclass(frozen=True)
class Metrics:
    """Mean squared and mean absolute error over ``n_cells`` predicted cells."""

    mse: float
    mae: float
    n_cells: int

    @classmethod
    def from_sums(cls, sq_sum: float, abs_sum: float, n_cells: int) -> "Metrics":
        if n_cells <= 0:
            raise config_error("trainer", "no predicted cells to score", field="range")
        return cls(mse=sq_sum / n_cells, mae=abs_sum / n_cells, n_cells=n_cells)

    def to_dict(self) -> dict:
        return {"mse": self.mse, "mae": self.mae, "n_cells": self.n_cells}


def error_sums(pred: np.ndarray, target: np.ndarray) -> tuple[float, float, int]:
    """Return ``(sum of squared errors, sum of absolute errors, cells)``."""
    if pred.shape != target.shape:
        raise config_error("trainer", f"prediction {pred.shape} vs target {target.shape}", field="target")
    diff = np.asarray(pred, dtype=np.float64) - np.asarray(target, dtype=np.float64)
    return float(np.sum(diff * diff)), float(np.sum(np.abs(diff))), int(diff.size)


def compute_metrics(pred: np.ndarray, target: np.ndarray) -> Metrics:
    return Metrics.from_sums(*error_sums(pred, target))


__all__ = ["Metrics", "compute_metrics", "error_sums"]
