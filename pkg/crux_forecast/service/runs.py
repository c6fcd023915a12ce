"""Single run orchestration: data -> train -> evaluate -> artifacts.

Each run writes ``<out>/<run_id>/`` holding ``report.json``,
``checkpoint.npz`` and ``trace.jsonl``.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import ValidationError

from ..base.errors import ErrorCode, ForecastError, classify_exception
from ..base.logging import LogContext, get_logger, log_event, normalized_log_event
from ..data import fit_apply_zscore, load_csv, make_splits
from ..models import build_model, save_checkpoint
from ..numerics import Rng
from ..trainer import evaluate, extract_diagnostics, train, write_trace
from .run_spec import RunReport, RunSpec, TraceSummary

REPORT_FILE = "report.json"
CHECKPOINT_FILE = "checkpoint.npz"
TRACE_FILE = "trace.jsonl"


def run_dir(out: str | Path, spec: RunSpec) -> Path:
    return Path(out) / spec.run_id


def execute_run(spec: RunSpec, out: str | Path, logger: Optional[logging.Logger] = None) -> RunReport:
    """Run one configuration end to end and persist its artifacts.

    The model RNG is derived from ``(seed, run_id)`` so runs are reproducible
    regardless of the order a grid schedules them in.

    Failure Modes
    -------------
    - Missing CSV: ``NOT_FOUND`` naming the path.
    - Malformed CSV: ``LOAD``; geometry problems: ``CONFIGURATION``.
    - Diverging loss: ``DIVERGENCE``.
    All are logged as ``run.error`` before being re-raised.
    """
    log = logger or get_logger()
    ctx = LogContext(dataset=spec.dataset_name, model=spec.label, horizon=spec.horizon, run_id=spec.run_id)
    normalized_log_event(log, "run.start", ctx, phase="start", lr=spec.train.lr, path=str(spec.csv_path))
    try:
        series = load_csv(spec.csv_path, dtype=np.dtype(spec.dtype), logger=log)
        split = make_splits(series, spec.lookback, spec.horizon, train_cap=spec.train_cap)
        ds = fit_apply_zscore(series, split, logger=log)
        rng = Rng.for_config(spec.train.seed, spec.run_id)
        model = build_model(spec.model_config_for(series.n_variates), rng, dtype=np.dtype(spec.dtype))
        result = train(model, ds, spec.train, rng=rng, ctx=ctx, logger=log)
        metrics = evaluate(model, ds, "test", spec.train.batch_size, spec.train.cross_border)
        diag = extract_diagnostics(model, result.epochs_run)
    except (ForecastError, ValidationError, OSError) as exc:
        code = classify_exception(exc)
        normalized_log_event(log, "run.error", ctx, phase="finalize", error_code=code.value, error=str(exc))
        raise

    final_lr = result.trace[-1].lr if result.trace else spec.train.lr
    report = RunReport(
        run_id=spec.run_id,
        spec=spec,
        mse=metrics.mse,
        mae=metrics.mae,
        n_cells=metrics.n_cells,
        params=diag.param_total,
        breakdown=diag.breakdown,
        gate_weights=diag.gate_weights,
        fusion_alpha=diag.fusion_alpha,
        trend_blend=diag.trend_blend,
        trace=TraceSummary(
            epochs_run=result.epochs_run,
            best_epoch=result.best_epoch,
            best_val_loss=result.best_val_loss,
            stopped_early=result.stopped_early,
            final_lr=final_lr,
            wall_seconds=result.wall_seconds,
        ),
        warnings=ds.warnings,
    )
    target = run_dir(out, spec)
    target.mkdir(parents=True, exist_ok=True)
    save_checkpoint(model, target / CHECKPOINT_FILE)
    write_trace(target / TRACE_FILE, result.trace)
    (target / REPORT_FILE).write_text(report.model_dump_json(indent=2), encoding="utf-8")
    log_event(log, "run.finalize", ctx, mse=report.mse, mae=report.mae, params=report.params, epochs=result.epochs_run)
    return report


def load_report(path: str | Path) -> RunReport:
    """Read a ``report.json`` written by :func:`execute_run`.

    Failure Modes
    -------------
    - Missing file: ``NOT_FOUND``; invalid content: ``LOAD``.
    """
    p = Path(path)
    if not p.is_file():
        raise ForecastError(ErrorCode.NOT_FOUND, f"report not found: {p}", "service", field=str(p))
    try:
        return RunReport.model_validate_json(p.read_text(encoding="utf-8"))
    except ValidationError as exc:
        raise ForecastError(ErrorCode.LOAD, f"invalid report {p}: {exc.errors()[0].get('msg')}", "service", field=str(p), raw=exc) from exc


__all__ = ["REPORT_FILE", "CHECKPOINT_FILE", "TRACE_FILE", "run_dir", "execute_run", "load_report"]
