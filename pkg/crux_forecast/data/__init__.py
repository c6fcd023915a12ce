"""Data ingest, splits, normalization and window sampling."""

from .dataset import WindowedDataset, fit_apply_zscore
from .loader import RawSeries, load_csv
from .splits import IndexRange, SplitSpec, make_splits
from .windows import WindowBatch, from_rows, sample_windows, to_rows, window_count, window_starts

__all__ = [
    "RawSeries",
    "load_csv",
    "IndexRange",
    "SplitSpec",
    "make_splits",
    "WindowedDataset",
    "fit_apply_zscore",
    "WindowBatch",
    "to_rows",
    "from_rows",
    "window_starts",
    "window_count",
    "sample_windows",
]
