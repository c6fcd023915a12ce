from __future__ import annotations

import json

import numpy as np
import pytest

from crux_forecast.base.errors import ErrorCode, ForecastError
from crux_forecast.config import get_settings
from crux_forecast.models import load_checkpoint, predict
from crux_forecast.service import RunSpec, execute_run, load_report, run_grid
from crux_forecast.service.grid import GRID_FILE
from crux_forecast.trainer import read_trace

TINY = {"lookback": 48, "hidden": 8, "kernel": 5, "max_epochs": 2, "scales": "1,4,16"}


def _settings(data_dir, **extra):
    return get_settings(overrides={"data_dir": str(data_dir), **TINY, **extra}, environ={})


def test_execute_run_writes_reloadable_artifacts(ett_like_dir, tmp_path):
    spec = RunSpec.from_settings(_settings(ett_like_dir), "ETTh1", "msmixer", 24)
    report = execute_run(spec, tmp_path / "runs")
    run_dir = tmp_path / "runs" / "ETTh1_msmixer_24_42"
    assert sorted(p.name for p in run_dir.iterdir()) == ["checkpoint.npz", "report.json", "trace.jsonl"]  # nosec B101
    assert load_report(run_dir / "report.json") == report  # nosec B101
    assert len(read_trace(run_dir / "trace.jsonl")) == report.trace.epochs_run  # nosec B101
    assert report.params == sum(report.breakdown.values())  # nosec B101
    assert set(report.gate_weights) == {1, 4, 16}  # nosec B101
    assert 0.0 < report.fusion_alpha < 1.0 and report.mse > 0  # nosec B101
    model = load_checkpoint(run_dir / "checkpoint.npz")
    assert model.params.total() == report.params  # nosec B101
    x = np.random.default_rng(0).normal(size=(2, 48, 7))
    assert predict(model, x).shape == (2, 24, 7)  # nosec B101


def test_runs_are_reproducible(ett_like_dir, tmp_path):
    spec = RunSpec.from_settings(_settings(ett_like_dir), "ETTh1", "nlinear", 24)
    a = execute_run(spec, tmp_path / "a")
    b = execute_run(spec, tmp_path / "b")
    assert (a.mse, a.mae, a.trace.best_val_loss) == (b.mse, b.mae, b.trace.best_val_loss)  # nosec B101


def test_missing_dataset_is_not_found(tmp_path):
    spec = RunSpec.from_settings(_settings(tmp_path), "ETTh2", "dlinear", 24)
    with pytest.raises(ForecastError) as ei:
        execute_run(spec, tmp_path / "runs")
    assert ei.value.code is ErrorCode.NOT_FOUND and "ETTh2.csv" in ei.value.message  # nosec B101


def test_grid_records_failures_and_keeps_order(ett_like_dir, tmp_path):
    s = _settings(ett_like_dir, max_epochs=1)
    specs = [
        RunSpec.from_settings(s, "ETTh1", "dlinear", 24),
        RunSpec.from_settings(s, "ETTh2", "dlinear", 24),
        RunSpec.from_settings(s, "ETTh1", "nlinear", 24),
    ]
    outcomes = run_grid(specs, tmp_path / "grid", workers=2)
    assert [o.run_id for o in outcomes] == [sp.run_id for sp in specs]  # nosec B101
    assert [o.ok for o in outcomes] == [True, False, True]  # nosec B101
    assert outcomes[1].code == "not_found" and outcomes[1].report is None  # nosec B101
    summary = json.loads((tmp_path / "grid" / GRID_FILE).read_text())
    assert summary["failed"] == 1 and len(summary["runs"]) == 3  # nosec B101


def test_grid_rejects_duplicate_run_ids(ett_like_dir, tmp_path):
    spec = RunSpec.from_settings(_settings(ett_like_dir), "ETTh1", "dlinear", 24)
    with pytest.raises(ForecastError) as ei:
        run_grid([spec, spec], tmp_path)
    assert ei.value.code is ErrorCode.USAGE  # nosec B101
