"""CLI action handlers.

Each ``handle_*`` function takes parsed arguments and returns a process exit
code. Settings merge defaults, the ``--config`` file, ``FORECAST_*``
environment variables and explicit flags (later wins). Errors are printed to
stderr as one JSON object ``{"error", "code", "field"}``; usage, validation
and configuration errors exit with ``2``, every other failure with ``1``.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Sequence

from pydantic import ValidationError

from ...base.errors import ErrorCode, ForecastError, classify_exception
from ...base.logging import LogContext, configure_logger, normalized_log_event
from ...config import ForecastSettings, get_settings
from ..grid import RunOutcome, ablation_specs, benchmark_specs, run_grid, sensitivity_specs
from ..reporting import write_report
from ..run_spec import RunSpec
from ..runs import execute_run

SETTING_FLAGS = (
    "data_dir",
    "out",
    "workers",
    "seed",
    "dtype",
    "lookback",
    "scales",
    "hidden",
    "kernel",
    "lr",
    "max_epochs",
    "batch_size",
    "patience",
    "train_cap",
    "log_level",
    "log_file",
)
_EXIT_USAGE = {ErrorCode.USAGE, ErrorCode.VALIDATION, ErrorCode.CONFIGURATION}


def load_settings(args: argparse.Namespace) -> ForecastSettings:
    """Merge flags present on ``args`` over config file, environment and defaults."""
    overrides = {k: getattr(args, k, None) for k in SETTING_FLAGS}
    return get_settings(getattr(args, "config", None), overrides)


def _logger(settings: ForecastSettings) -> logging.Logger:
    return configure_logger(level=settings.log_level, file_path=settings.log_file)


def emit_error(exc: BaseException) -> int:
    """Print ``exc`` as JSON to stderr and return the matching exit code."""
    code = classify_exception(exc)
    field = None
    if isinstance(exc, ForecastError):
        message, field = exc.message, exc.field
    elif isinstance(exc, ValidationError):
        first = exc.errors()[0]
        field = ".".join(str(p) for p in first.get("loc", ())) or None
        message = f"invalid run configuration: {first.get('msg')}"
    else:
        message = str(exc)
    print(json.dumps({"error": message, "code": code.value, "field": field}), file=sys.stderr)
    return 2 if code in _EXIT_USAGE else 1


def _summary(outcomes: Sequence[RunOutcome]) -> Dict[str, Any]:
    return {
        "runs": len(outcomes),
        "failed": sum(not o.ok for o in outcomes),
        "failures": [{"run_id": o.run_id, "code": o.code, "error": o.error} for o in outcomes if not o.ok],
    }


def _run_suite(name: str, specs: List[RunSpec], settings: ForecastSettings, logger: logging.Logger) -> int:
    out = Path(settings.out) / name
    ctx = LogContext(extra={"suite": name})
    normalized_log_event(logger, "cli.start", ctx, phase="start", runs=len(specs))
    outcomes = run_grid(specs, out, settings.workers, logger)
    payload = _summary(outcomes) | {"out": str(out)}
    if any(o.ok for o in outcomes):
        csv_path, md_path = write_report(out)
        payload |= {"csv": str(csv_path), "markdown": str(md_path)}
    print(json.dumps(payload))
    normalized_log_event(logger, "cli.finalize", ctx, phase="finalize", failed=payload["failed"])
    return 0 if payload["failed"] == 0 else 1


def handle_train(args: argparse.Namespace) -> int:
    """Execute the ``train`` subcommand for one (dataset, model, horizon).

    Returns
    -------
    int
        ``0`` on success; ``2`` for an invalid run configuration; ``1`` for data,
        load or training failures.
    """
    try:
        settings = load_settings(args)
        logger = _logger(settings)
        spec = RunSpec.from_settings(
            settings,
            args.dataset,
            args.model,
            args.horizon,
            use_shortcut=not args.no_shortcut,
            use_revin=not args.no_revin,
        )
        ctx = LogContext(dataset=spec.dataset_name, model=spec.label, horizon=spec.horizon, run_id=spec.run_id)
        normalized_log_event(logger, "cli.start", ctx, phase="start", lr=spec.train.lr)
        report = execute_run(spec, settings.out, logger)
    except (ForecastError, ValidationError, OSError) as exc:
        return emit_error(exc)
    print(
        json.dumps(
            {
                "run_id": report.run_id,
                "mse": report.mse,
                "mae": report.mae,
                "params": report.params,
                "epochs": report.trace.epochs_run,
                "dir": str(Path(settings.out) / report.run_id),
            }
        )
    )
    normalized_log_event(logger, "cli.finalize", ctx, phase="finalize", epoch=report.trace.epochs_run)
    return 0


def handle_benchmark(args: argparse.Namespace) -> int:
    """Run the benchmark grid into ``<out>/benchmark`` and write its tables."""
    try:
        settings = load_settings(args)
        specs = benchmark_specs(settings, args.datasets, args.horizons, args.models)
        return _run_suite("benchmark", specs, settings, _logger(settings))
    except (ForecastError, ValidationError, OSError) as exc:
        return emit_error(exc)


def handle_ablate(args: argparse.Namespace) -> int:
    try:
        settings = load_settings(args)
        specs = ablation_specs(settings, args.dataset, args.horizon)
        return _run_suite(f"ablation_{Path(args.dataset).stem}_{args.horizon}", specs, settings, _logger(settings))
    except (ForecastError, ValidationError, OSError) as exc:
        return emit_error(exc)


def handle_sensitivity(args: argparse.Namespace) -> int:
    try:
        settings = load_settings(args)
        specs = sensitivity_specs(settings, args.dataset, args.horizon, args.lookbacks, args.scale_sets)
        return _run_suite(f"sensitivity_{Path(args.dataset).stem}_{args.horizon}", specs, settings, _logger(settings))
    except (ForecastError, ValidationError, OSError) as exc:
        return emit_error(exc)


def handle_report(args: argparse.Namespace) -> int:
    """Regenerate ``results.csv`` / ``results.md`` from stored reports."""
    try:
        configure_logger(level=args.log_level)
        csv_path, md_path = write_report(args.run_dir, args.dest)
    except (ForecastError, ValidationError, OSError) as exc:
        return emit_error(exc)
    print(json.dumps({"csv": str(csv_path), "markdown": str(md_path)}))
    return 0


__all__ = [
    "SETTING_FLAGS",
    "load_settings",
    "emit_error",
    "handle_train",
    "handle_benchmark",
    "handle_ablate",
    "handle_sensitivity",
    "handle_report",
]
