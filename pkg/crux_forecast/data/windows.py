"""Stride-1 (look-back, horizon) window sampling and the channel-independent layout.

A batch of ``B`` windows over ``N`` variates is stored as rows: row
``b * N + n`` holds variate ``n`` of window ``b``. ``to_rows``/``from_rows``
convert between the (B, T, N) and (B*N, T) layouts.

Window positions are identified by the index ``p`` of the first target step.
Targets ``[p, p + H)`` always lie inside the sampled range. The look-back
``[p - T, p)`` lies inside the range too, except that with
``cross_border=True`` it may reach up to ``T`` steps before the range start
(never before index 0).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..base.errors import config_error, usage_error
from ..config import defaults as D
from ..numerics.rng import Rng
from .dataset import WindowedDataset
from .splits import IndexRange


@dataclass(frozen=True)
class WindowBatch:
    """One batch in channel-independent layout.

    Attributes
    ----------
    x: np.ndarray
        (B*N, T) look-back rows.
    y: np.ndarray
        (B*N, H) target rows.
    starts: np.ndarray
        (B,) first-target indices of the windows.
    """

    x: np.ndarray
    y: np.ndarray
    starts: np.ndarray
    batch_size: int
    n_variates: int

    @property
    def lookback(self) -> int:
        return int(self.x.shape[1])

    @property
    def horizon(self) -> int:
        return int(self.y.shape[1])


def to_rows(x_btn: np.ndarray) -> np.ndarray:
    """(B, T, N) -> (B*N, T)."""
    b, t, n = x_btn.shape
    return np.ascontiguousarray(x_btn.transpose(0, 2, 1)).reshape(b * n, t)


def from_rows(rows: np.ndarray, n_variates: int) -> np.ndarray:
    """(B*N, T) -> (B, T, N)."""
    bn, t = rows.shape
    if bn % n_variates:
        raise config_error("data", f"{bn} rows is not a multiple of {n_variates} variates", field="n_variates")
    return np.ascontiguousarray(rows.reshape(bn // n_variates, n_variates, t).transpose(0, 2, 1))


def window_starts(
    rng_range: IndexRange,
    lookback: int,
    horizon: int,
    cross_border: bool = D.CROSS_BORDER_CONTEXT,
) -> np.ndarray:
    """First-target indices of every stride-1 window in ``rng_range``.

    For a range of length ``L`` with the look-back kept inside it the count is
    ``L - T - H + 1``.
    """
    floor = max(rng_range.start - lookback, 0) if cross_border else rng_range.start
    first = max(rng_range.start, floor + lookback)
    last = rng_range.stop - horizon
    if last < first:
        return np.empty(0, dtype=np.int64)
    return np.arange(first, last + 1, dtype=np.int64)


def window_count(rng_range: IndexRange, lookback: int, horizon: int, cross_border: bool = D.CROSS_BORDER_CONTEXT) -> int:
    return int(window_starts(rng_range, lookback, horizon, cross_border).size)


def sample_windows(
    ds: WindowedDataset,
    rng_range: IndexRange | str,
    lookback: Optional[int] = None,
    horizon: Optional[int] = None,
    shuffle: bool = False,
    rng: Optional[Rng] = None,
    batch_size: int = D.BATCH_SIZE,
    cross_border: bool = D.CROSS_BORDER_CONTEXT,
) -> Iterator[WindowBatch]:
    """Yield stride-1 window batches over ``rng_range``.

    Batches hold ``batch_size`` windows; the final partial batch is kept. With
    ``shuffle`` the window order is one permutation drawn from ``rng``.

    Failure Modes
    -------------
    - Range too short for a single window: configuration error.
    - ``shuffle`` without ``rng``: usage error.
    """
    window_range = ds.split.range(rng_range) if isinstance(rng_range, str) else rng_range
    t = ds.split.lookback if lookback is None else lookback
    h = ds.split.horizon if horizon is None else horizon
    if batch_size < 1:
        raise config_error("data", f"batch_size must be positive, got {batch_size}", field="batch_size")
    starts = window_starts(window_range, t, h, cross_border)
    if starts.size == 0:
        raise config_error(
            "data",
            f"range [{window_range.start}, {window_range.stop}) holds no window for lookback {t} + horizon {h}",
            field="range",
        )
    if shuffle:
        if rng is None:
            raise usage_error("data", "shuffled sampling needs an rng", field="rng")
        starts = starts[rng.permutation(starts.size)]
    return _iter_batches(ds.values, starts, t, h, batch_size)


def _iter_batches(values: np.ndarray, starts: np.ndarray, t: int, h: int, batch_size: int) -> Iterator[WindowBatch]:
    n = values.shape[1]
    # (T_total - w + 1, N, w) views: entry i covers steps [i, i + w)
    past = sliding_window_view(values, t, axis=0)
    future = sliding_window_view(values, h, axis=0)
    for lo in range(0, starts.size, batch_size):
        idx = starts[lo : lo + batch_size]
        b = idx.size
        x = np.ascontiguousarray(past[idx - t]).reshape(b * n, t)
        y = np.ascontiguousarray(future[idx]).reshape(b * n, h)
        yield WindowBatch(x=x, y=y, starts=idx, batch_size=b, n_variates=n)


__all__ = ["WindowBatch", "to_rows", "from_rows", "window_starts", "window_count", "sample_windows"]
