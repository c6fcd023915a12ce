"""CSV ingest for ETT-style multivariate series.

Expected layout: a header row ``date,<name1>,...,<nameN>``, the first column
holding date strings and the remaining columns decimal values. Missing values
are not supported. Non-uniform timestamp spacing is tolerated but recorded as
a warning on the returned :class:`RawSeries` and logged as ``data.warning``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from ..base.errors import ErrorCode, ForecastError
from ..base.logging import LogContext, get_logger, log_event


@dataclass(frozen=True)
class RawSeries:
    """Parsed multivariate series.

    Attributes
    ----------
    timestamps: np.ndarray
        ``datetime64[ns]`` values, strictly increasing.
    values: np.ndarray
        (T_total, N) observations.
    variate_names: Tuple[str, ...]
        Column names after the date column, in file order.
    warnings: Tuple[str, ...]
        Non-fatal issues found while loading.
    """

    timestamps: np.ndarray
    values: np.ndarray
    variate_names: Tuple[str, ...]
    name: str = ""
    warnings: Tuple[str, ...] = ()

    @property
    def n_steps(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_variates(self) -> int:
        return int(self.values.shape[1])


def _load_error(path: Path, message: str, field: Optional[str] = None) -> ForecastError:
    return ForecastError(ErrorCode.LOAD, f"{path.name}: {message}", "data", field=field or str(path))


def _parse_numeric(frame: pd.DataFrame, path: Path) -> np.ndarray:
    """Convert every value column to float; the first bad cell aborts the load."""
    columns = []
    for col in frame.columns[1:]:
        raw = frame[col]
        parsed = pd.to_numeric(raw.str.strip(), errors="coerce")
        bad = parsed.isna() | ~np.isfinite(parsed.to_numpy(dtype=float, na_value=np.nan))
        if bad.any():
            row = int(np.flatnonzero(bad.to_numpy())[0])
            raise _load_error(
                path,
                f"row {row} (line {row + 2}), column {col!r}: cannot parse value {raw.iloc[row]!r}",
                field=f"row {row}",
            )
        columns.append(parsed.to_numpy(dtype=np.float64))
    return np.column_stack(columns)


def _parse_timestamps(frame: pd.DataFrame, path: Path) -> np.ndarray:
    stamps = pd.to_datetime(frame.iloc[:, 0].str.strip(), errors="coerce")
    bad = stamps.isna().to_numpy()
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise _load_error(path, f"row {row} (line {row + 2}): cannot parse date {frame.iloc[row, 0]!r}", field=f"row {row}")
    out = stamps.to_numpy(dtype="datetime64[ns]")
    if out.size > 1:
        steps = np.diff(out)
        non_increasing = np.flatnonzero(steps <= np.timedelta64(0, "ns"))
        if non_increasing.size:
            row = int(non_increasing[0]) + 1
            raise _load_error(path, f"row {row} (line {row + 2}): timestamps not strictly increasing", field=f"row {row}")
    return out


def load_csv(
    path: str | Path,
    dtype: np.dtype | type = np.float64,
    logger: Optional[logging.Logger] = None,
) -> RawSeries:
    """Load an ETT-style CSV into a :class:`RawSeries`.

    Parameters
    ----------
    path: str | Path
        CSV file; header ``date,<names...>``.
    dtype: numpy dtype
        Storage dtype of the values.
    logger: Optional[logging.Logger]
        Structured logger (defaults to the package logger).

    Returns
    -------
    RawSeries
        All rows parsed; row and column counts are logged as ``data.load``.

    Failure Modes
    -------------
    - Missing file: ``NOT_FOUND`` naming the path.
    - Empty file, fewer than two columns, unparseable date or value, missing
      value, or non-increasing timestamps: ``LOAD`` naming the row.
    """
    log = logger or get_logger()
    p = Path(path)
    if not p.is_file():
        raise ForecastError(ErrorCode.NOT_FOUND, f"data file not found: {p}", "data", field=str(p))
    try:
        frame = pd.read_csv(p, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError as exc:
        raise _load_error(p, "file is empty") from exc
    except (pd.errors.ParserError, UnicodeDecodeError) as exc:
        raise _load_error(p, f"malformed CSV: {exc}") from exc
    if frame.shape[1] < 2:
        raise _load_error(p, "expected a date column followed by at least one value column", field="header")
    if frame.shape[0] == 0:
        raise _load_error(p, "no data rows")

    timestamps = _parse_timestamps(frame, p)
    values = _parse_numeric(frame, p).astype(dtype, copy=False)

    warnings: list[str] = []
    if timestamps.size > 2:
        steps = np.diff(timestamps)
        if np.any(steps != steps[0]):
            irregular = int(np.count_nonzero(steps != steps[0]))
            warnings.append(f"non-uniform timestamp spacing at {irregular} step(s)")

    ctx = LogContext(dataset=p.stem)
    for message in warnings:
        log_event(log, "data.warning", ctx, level=logging.WARNING, path=str(p), warning=message)
    log_event(log, "data.load", ctx, path=str(p), rows=int(values.shape[0]), columns=int(values.shape[1]))
    return RawSeries(
        timestamps=timestamps,
        values=values,
        variate_names=tuple(str(c).strip() for c in frame.columns[1:]),
        name=p.stem,
        warnings=tuple(warnings),
    )


__all__ = ["RawSeries", "load_csv"]
