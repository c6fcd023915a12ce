"""Shared fixtures for the forecasting test suite.

Provides a synthetic ETT-shaped CSV writer, a z-scored dataset builder and a
marker gate for tests that need the real ETT files (``FORECAST_DATA_DIR``).
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Callable, Optional

import numpy as np
import pandas as pd
import pytest

from crux_forecast.data import RawSeries, WindowedDataset, fit_apply_zscore, make_splits
from crux_forecast.tests.synthetic import ETT_COLUMNS, sine_panel, write_series_csv


@pytest.fixture
def csv_writer(tmp_path) -> Callable[..., Path]:
    """Return ``write(name, values, names=None)`` writing into ``tmp_path``."""

    def _write(name: str, values: np.ndarray, names: Optional[tuple[str, ...]] = None) -> Path:
        return write_series_csv(tmp_path / f"{name}.csv", values, names)

    return _write


@pytest.fixture
def ett_like_dir(tmp_path) -> Path:
    """Directory with a small ETTh1-shaped CSV (7 variates, 600 hourly steps)."""
    rng = np.random.default_rng(7)
    base = sine_panel(600, 7, period=24) + 0.1 * rng.standard_normal((600, 7))
    write_series_csv(tmp_path / "ETTh1.csv", base, ETT_COLUMNS)
    return tmp_path


@pytest.fixture
def make_dataset() -> Callable[..., WindowedDataset]:
    """Return ``build(values, lookback, horizon)`` producing a z-scored dataset."""

    def _build(values: np.ndarray, lookback: int, horizon: int, name: str = "synthetic") -> WindowedDataset:
        stamps = pd.date_range("2016-07-01", periods=values.shape[0], freq="h").to_numpy()
        names = tuple(f"v{i}" for i in range(values.shape[1]))
        series = RawSeries(timestamps=stamps, values=values.astype(np.float64), variate_names=names, name=name)
        return fit_apply_zscore(series, make_splits(series, lookback, horizon))

    return _build


@pytest.fixture
def real_data_dir() -> Path:
    """Directory with the real ETT CSVs; skips when FORECAST_DATA_DIR is unset."""
    root = os.getenv("FORECAST_DATA_DIR")
    if not root or not (Path(root) / "ETTh1.csv").is_file():
        pytest.skip("FORECAST_DATA_DIR with ETT CSVs not available")
    return Path(root)
