"""Train-split z-score normalization.

All training and every reported metric live in this z-scored space.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..base.errors import config_error
from ..base.logging import LogContext, get_logger, log_event
from ..config import defaults as D
from .loader import RawSeries
from .splits import SplitSpec


@dataclass(frozen=True)
class WindowedDataset:
    """Normalized series with the statistics that produced it.

    ``values`` is (T_total, N); ``mean``/``std`` are per-variate (N,) arrays
    computed from the train range only (population std, floored at 1e-8).
    """

    values: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    split: SplitSpec
    variate_names: Tuple[str, ...] = ()
    name: str = ""
    warnings: Tuple[str, ...] = ()

    @property
    def n_variates(self) -> int:
        return int(self.values.shape[1])

    def normalize(self, raw: np.ndarray) -> np.ndarray:
        return (raw - self.mean) / self.std

    def denormalize(self, z: np.ndarray) -> np.ndarray:
        return z * self.std + self.mean


def fit_apply_zscore(
    series: RawSeries,
    split: SplitSpec,
    logger: Optional[logging.Logger] = None,
) -> WindowedDataset:
    """Fit per-variate mean/std on the train range and transform every row.

    A variate whose train-range std falls below 1e-8 is floored and reported
    as a warning (stored on the dataset and logged as ``data.warning``).
    """
    train = split.train
    if train.length <= 0:
        raise config_error("data", "train range is empty", field="train")
    block = series.values[train.start : train.stop].astype(np.float64)
    mean = block.mean(axis=0)
    std = block.std(axis=0, ddof=0)
    warnings = list(series.warnings)
    degenerate = np.flatnonzero(std < D.STD_FLOOR)
    if degenerate.size:
        names = [series.variate_names[i] if i < len(series.variate_names) else str(i) for i in degenerate]
        message = f"constant variate(s) in train split: {', '.join(names)}; std floored at {D.STD_FLOOR:g}"
        warnings.append(message)
        log_event(logger or get_logger(), "data.warning", LogContext(dataset=series.name), level=logging.WARNING, warning=message)
    std = np.maximum(std, D.STD_FLOOR)
    values = ((series.values - mean) / std).astype(series.values.dtype, copy=False)
    return WindowedDataset(
        values=values,
        mean=mean,
        std=std,
        split=split,
        variate_names=series.variate_names,
        name=series.name,
        warnings=tuple(warnings),
    )


__all__ = ["WindowedDataset", "fit_apply_zscore"]
