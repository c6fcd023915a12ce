from __future__ import annotations

import numpy as np
import pytest

from crux_forecast.base.errors import ErrorCode, ForecastError
from crux_forecast.data import IndexRange
from crux_forecast.models import ModelConfig, build_model
from crux_forecast.numerics import Rng
from crux_forecast.trainer import EpochRecord, compute_metrics, evaluate, extract_diagnostics, read_trace, write_trace

from crux_forecast.tests.synthetic import sine_panel


def test_metric_oracles():
    y = np.random.default_rng(0).normal(size=(5, 4, 3))
    assert compute_metrics(y, y) == compute_metrics(y.copy(), y)  # nosec B101
    m0 = compute_metrics(y, y)
    assert (m0.mse, m0.mae, m0.n_cells) == (0.0, 0.0, 60)  # nosec B101
    m1 = compute_metrics(y + 1.0, y)
    assert m1.mse == pytest.approx(1.0) and m1.mae == pytest.approx(1.0)  # nosec B101
    signs = np.where(np.arange(y.size) % 2 == 0, 2.0, -2.0).reshape(y.shape)
    m2 = compute_metrics(y + signs, y)
    assert m2.mse == pytest.approx(4.0) and m2.mae == pytest.approx(2.0)  # nosec B101
    assert m2.mae**2 <= m2.mse + 1e-12  # nosec B101


def test_evaluate_is_repeatable_and_rejects_empty_range(make_dataset):
    ds = make_dataset(sine_panel(300, 2, noise=0.2), 24, 8)
    model = build_model(ModelConfig(kind="dlinear", lookback=24, horizon=8, n_variates=2, kernel=5), Rng(1))
    first = evaluate(model, ds, "test")
    assert evaluate(model, ds, "test") == first  # nosec B101
    assert first.n_cells > 0 and first.mae**2 <= first.mse  # nosec B101
    with pytest.raises(ForecastError) as ei:
        evaluate(model, ds, IndexRange(0, 10), cross_border=False)
    assert ei.value.code is ErrorCode.CONFIGURATION  # nosec B101


def test_untrained_model_error_is_order_one(make_dataset):
    ds = make_dataset(sine_panel(800, 7, noise=0.1), 96, 24)
    cfg = ModelConfig(kind="msmixer", lookback=96, horizon=24, n_variates=7, hidden=16)
    mse = evaluate(build_model(cfg, Rng(42)), ds, "test").mse
    assert np.isfinite(mse) and 0.5 < mse < 3.0  # nosec B101


def test_diagnostics_of_untrained_models():
    mixer = build_model(ModelConfig(), Rng(0))
    diag = extract_diagnostics(mixer)
    assert diag.param_total == 111_859  # nosec B101
    assert list(diag.gate_weights) == [1, 4, 16]  # nosec B101
    np.testing.assert_allclose(list(diag.gate_weights.values()), [1 / 3] * 3)
    assert (diag.fusion_alpha, diag.trend_blend) == (0.5, 0.5)  # nosec B101
    assert sum(diag.breakdown.values()) == diag.param_total  # nosec B101

    mixer.params["gate.logits"].value[...] = [2.0, -1.0, 0.3]
    assert abs(sum(extract_diagnostics(mixer).gate_weights.values()) - 1.0) < 1e-9  # nosec B101

    linear = extract_diagnostics(build_model(ModelConfig(kind="dlinear"), Rng(0)), epochs_run=3)
    assert linear.gate_weights is None and linear.fusion_alpha is None and linear.trend_blend is None  # nosec B101
    assert (linear.param_total, linear.epochs_run) == (64_704, 3)  # nosec B101

    no_shortcut = extract_diagnostics(build_model(ModelConfig(use_shortcut=False), Rng(0)))
    assert no_shortcut.fusion_alpha is None and no_shortcut.trend_blend == 0.5  # nosec B101


def test_trace_file_reload_and_bad_line(tmp_path):
    recs = [EpochRecord(1, 0.9, 0.8, 1e-3, 0.5), EpochRecord(2, 0.7, 0.75, 1e-3, 0.4)]
    path = write_trace(tmp_path / "run" / "trace.jsonl", recs)
    assert read_trace(path) == recs  # nosec B101
    path.write_text(path.read_text() + "{not json}\n")
    with pytest.raises(ForecastError) as ei:
        read_trace(path)
    assert ei.value.code is ErrorCode.LOAD and ei.value.field == "line 3"  # nosec B101
