"""Grid execution: benchmark, ablation and sensitivity suites.

Runs are independent and share no mutable state, so a grid executes them on
a thread pool and returns outcomes in input order. A failing run is recorded
with its error and the grid carries on.
"""
from __future__ import annotations

import concurrent.futures as cf
import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from time import perf_counter
from typing import Dict, List, Optional, Sequence, Tuple

from ..base.errors import ForecastError, classify_exception, usage_error
from ..base.logging import get_logger, log_event
from ..config import ForecastSettings
from ..config import defaults as D
from .run_spec import RunReport, RunSpec
from .runs import execute_run

GRID_FILE = "grid.json"

ABLATION_VARIANTS: Dict[str, Dict[str, object]] = {
    "full": {},
    "no_shortcut": {"use_shortcut": False},
    "scales_1": {"scales": (1,)},
    "scales_1_4": {"scales": (1, 4)},
    "shortcut_only": {"model": "dlinear"},
    "no_revin": {"use_revin": False},
}


@dataclass(frozen=True)
class RunOutcome:
    """Result slot of one grid entry (``report`` is set iff ``ok``)."""

    run_id: str
    ok: bool
    duration_ms: float
    report: Optional[RunReport] = None
    error: Optional[str] = None
    code: Optional[str] = None

    def to_dict(self) -> dict:
        out = asdict(self)
        out.pop("report")
        out["mse"] = self.report.mse if self.report else None
        return out


def _run_one(spec: RunSpec, out: Path, logger: logging.Logger) -> RunOutcome:
    t0 = perf_counter()
    try:
        report = execute_run(spec, out, logger)
        return RunOutcome(spec.run_id, True, (perf_counter() - t0) * 1000.0, report=report)
    except Exception as exc:  # noqa: BLE001 - every failure is recorded, the grid continues
        code = classify_exception(exc)
        message = exc.message if isinstance(exc, ForecastError) else str(exc)
        return RunOutcome(spec.run_id, False, (perf_counter() - t0) * 1000.0, error=message[:500], code=code.value)


def run_grid(
    specs: Sequence[RunSpec],
    out: str | Path,
    workers: int = D.WORKERS,
    logger: Optional[logging.Logger] = None,
) -> List[RunOutcome]:
    """Execute ``specs`` and write ``<out>/grid.json``.

    Parameters
    ----------
    specs: Sequence[RunSpec]
        Runs to execute; run ids must be unique.
    out: str | Path
        Output root (one sub-directory per run).
    workers: int
        Thread pool size; ``1`` runs sequentially.

    Returns
    -------
    List[RunOutcome]
        One outcome per spec, in input order.
    """
    log = logger or get_logger()
    root = Path(out)
    root.mkdir(parents=True, exist_ok=True)
    ids = [s.run_id for s in specs]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise usage_error("service", f"duplicate run ids in grid: {', '.join(dupes)}", field="run_id")
    log_event(log, "grid.start", runs=len(specs), workers=workers)
    if workers <= 1:
        outcomes = [_run_one(s, root, log) for s in specs]
    else:
        with cf.ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_run_one, s, root, log) for s in specs]
            outcomes = [f.result() for f in futures]
    summary = {"runs": [o.to_dict() for o in outcomes], "failed": sum(not o.ok for o in outcomes)}
    (root / GRID_FILE).write_text(json.dumps(summary, indent=2, sort_keys=True), encoding="utf-8")
    log_event(log, "grid.finalize", runs=len(outcomes), failed=summary["failed"])
    return outcomes


def benchmark_specs(
    settings: ForecastSettings,
    datasets: Sequence[str] = D.DATASETS,
    horizons: Sequence[int] = D.HORIZONS,
    models: Sequence[str] = D.MODELS,
) -> List[RunSpec]:
    """The datasets x horizons x models grid, dataset-major."""
    return [
        RunSpec.from_settings(settings, ds, model, h)
        for ds in datasets
        for h in horizons
        for model in models
    ]


def ablation_specs(settings: ForecastSettings, dataset: str = "ETTh1", horizon: int = 96) -> List[RunSpec]:
    """Full model plus one spec per removed or changed component."""
    specs = []
    for name, overrides in ABLATION_VARIANTS.items():
        fields = {"model": "msmixer", **overrides}
        model = str(fields.pop("model"))
        specs.append(RunSpec.from_settings(settings, dataset, model, horizon, variant=name, **fields))
    return specs


def sensitivity_specs(
    settings: ForecastSettings,
    dataset: str = "ETTh1",
    horizon: int = 96,
    lookbacks: Sequence[int] = D.LOOKBACK_SWEEP,
    scale_sets: Sequence[Tuple[int, ...]] = D.SCALE_SWEEP,
) -> List[RunSpec]:
    """MSMixer runs sweeping the look-back (``T<n>``) and the scale set (``S<a>-<b>``)."""
    specs = [
        RunSpec.from_settings(settings, dataset, "msmixer", horizon, lookback=t, variant=f"T{t}")
        for t in lookbacks
    ]
    specs += [
        RunSpec.from_settings(settings, dataset, "msmixer", horizon, scales=tuple(s), variant="S" + "-".join(map(str, s)))
        for s in scale_sets
    ]
    return specs


__all__ = [
    "ABLATION_VARIANTS",
    "GRID_FILE",
    "RunOutcome",
    "run_grid",
    "benchmark_specs",
    "ablation_specs",
    "sensitivity_specs",
]
