"""Chronological 70/10/20 split arithmetic."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..base.errors import config_error
from ..config import defaults as D
from .loader import RawSeries


_RATIO_SCALE = 1_000_000


def _floor_share(total: int, ratio: float) -> int:
    """``floor(ratio * total)`` in integer arithmetic (0.7 * 17420 must be 12194)."""
    return total * round(ratio * _RATIO_SCALE) // _RATIO_SCALE


@dataclass(frozen=True)
class IndexRange:
    """Half-open interval ``[start, stop)`` of time indices."""

    start: int
    stop: int

    @property
    def length(self) -> int:
        return self.stop - self.start

    def __contains__(self, idx: object) -> bool:
        return isinstance(idx, int) and self.start <= idx < self.stop


@dataclass(frozen=True)
class SplitSpec:
    """Train/val/test ranges plus the window geometry they were built for."""

    train: IndexRange
    val: IndexRange
    test: IndexRange
    lookback: int
    horizon: int
    total: int
    train_cap: Optional[int] = None

    def range(self, name: str) -> IndexRange:
        try:
            return {"train": self.train, "val": self.val, "test": self.test}[name]
        except KeyError:
            raise config_error("data", f"unknown split {name!r}", field="split") from None


def make_splits(
    series: RawSeries | int,
    lookback: int,
    horizon: int,
    train_cap: Optional[int] = None,
) -> SplitSpec:
    """Split ``T_total`` steps into contiguous train < val < test ranges.

    Train gets ``floor(0.7 * T_total)``, val ``floor(0.1 * T_total)`` and test
    the remainder. With ``train_cap`` the train range keeps only its first
    ``train_cap`` steps; val and test are unchanged.

    Failure Modes
    -------------
    ``T_total < lookback + horizon``: configuration error.
    """
    total = series if isinstance(series, int) else series.n_steps
    if lookback < 1 or horizon < 1:
        raise config_error("data", "lookback and horizon must be positive", field="lookback")
    if total < lookback + horizon:
        raise config_error(
            "data",
            f"series of {total} steps is shorter than lookback {lookback} + horizon {horizon}",
            field="horizon",
        )
    if train_cap is not None and train_cap < 1:
        raise config_error("data", f"train_cap must be positive, got {train_cap}", field="train_cap")
    n_train = _floor_share(total, D.TRAIN_RATIO)
    n_val = _floor_share(total, D.VAL_RATIO)
    train_stop = n_train if train_cap is None else min(n_train, train_cap)
    return SplitSpec(
        train=IndexRange(0, train_stop),
        val=IndexRange(n_train, n_train + n_val),
        test=IndexRange(n_train + n_val, total),
        lookback=lookback,
        horizon=horizon,
        total=total,
        train_cap=train_cap,
    )


__all__ = ["IndexRange", "SplitSpec", "make_splits"]
