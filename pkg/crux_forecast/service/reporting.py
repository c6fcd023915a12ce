"""Result tables regenerated from stored run reports.

``write_report`` collects every ``<run_dir>/*/report.json``, writes
``results.csv`` and renders ``results.md`` from that CSV. The markdown holds
the forecasting table (best MSE per row in bold plus an Average row), the
scale-gate and fusion weights of MSMixer, parameter counts in thousands and
per-model win counts. Missing values render as ``–``. Output depends only on
the reports, so reruns are byte-identical.
"""
from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from ..base.errors import ErrorCode, ForecastError, usage_error
from ..config import defaults as D
from .run_spec import RunReport
from .runs import REPORT_FILE, load_report

CSV_COLUMNS = ("dataset", "model", "horizon", "mse", "mae", "params", "epochs", "w1", "w4", "w16", "alpha", "trend_blend")
RESULTS_CSV = "results.csv"
RESULTS_MD = "results.md"
MISSING = "–"


def collect_reports(run_dir: str | Path) -> List[RunReport]:
    """Load every run report below ``run_dir``, ordered by run id.

    Failure Modes
    -------------
    - Missing directory: ``NOT_FOUND``; no reports inside: usage error.
    """
    root = Path(run_dir)
    if not root.is_dir():
        raise ForecastError(ErrorCode.NOT_FOUND, f"run directory not found: {root}", "service", field=str(root))
    paths = sorted(root.glob(f"*/{REPORT_FILE}"))
    if not paths:
        raise usage_error("service", f"no run reports found under {root}", field="run_dir")
    return [load_report(p) for p in paths]


def _order(values: Iterable[str], preferred: Sequence[str]) -> List[str]:
    rank = {name: i for i, name in enumerate(preferred)}
    return sorted(set(values), key=lambda v: (rank.get(v.split(":")[0], len(rank)), v))


def results_frame(reports: Iterable[RunReport]) -> pd.DataFrame:
    """One row per report with the :data:`CSV_COLUMNS` layout."""
    rows = []
    for r in reports:
        gate = r.gate_weights or {}
        rows.append(
            {
                "dataset": r.spec.dataset_name,
                "model": r.spec.label,
                "horizon": r.spec.horizon,
                "mse": r.mse,
                "mae": r.mae,
                "params": r.params,
                "epochs": r.trace.epochs_run,
                "w1": gate.get(1),
                "w4": gate.get(4),
                "w16": gate.get(16),
                "alpha": r.fusion_alpha,
                "trend_blend": r.trend_blend,
            }
        )
    frame = pd.DataFrame(rows, columns=list(CSV_COLUMNS))
    if frame.empty:
        return frame
    ds_rank = {n: i for i, n in enumerate(_order(frame["dataset"], D.DATASETS))}
    model_rank = {n: i for i, n in enumerate(_order(frame["model"], D.MODELS))}
    frame = frame.assign(_d=frame["dataset"].map(ds_rank), _m=frame["model"].map(model_rank))
    return frame.sort_values(["_d", "horizon", "_m"], kind="stable").drop(columns=["_d", "_m"]).reset_index(drop=True)


def write_results_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    p = Path(path)
    frame.to_csv(p, index=False, float_format="%.6f", lineterminator="\n")
    return p


def read_results_csv(path: str | Path) -> pd.DataFrame:
    """Read a table written by :func:`write_results_csv`."""
    p = Path(path)
    if not p.is_file():
        raise ForecastError(ErrorCode.NOT_FOUND, f"results file not found: {p}", "service", field=str(p))
    frame = pd.read_csv(p, dtype={"dataset": str, "model": str})
    missing = [c for c in CSV_COLUMNS if c not in frame.columns]
    if missing:
        raise ForecastError(ErrorCode.LOAD, f"{p.name} lacks columns {missing}", "service", field=str(p))
    return frame


# ------------------------------------------------------------------ markdown
def _fmt(value: object, digits: int = 3) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return MISSING
    return f"{float(value):.{digits}f}"


def _table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> List[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return lines


def _lookup(frame: pd.DataFrame, dataset: str, horizon: int, model: str) -> Optional[pd.Series]:
    hit = frame[(frame["dataset"] == dataset) & (frame["horizon"] == horizon) & (frame["model"] == model)]
    return None if hit.empty else hit.iloc[0]


def _configs(frame: pd.DataFrame) -> List[Tuple[str, int]]:
    pairs = frame[["dataset", "horizon"]].drop_duplicates()
    return [(str(d), int(h)) for d, h in pairs.itertuples(index=False)]


def _best_cells(values: Sequence[Optional[float]]) -> List[str]:
    present = [v for v in values if v is not None and not math.isnan(v)]
    best = min(present) if present else None
    out = []
    for v in values:
        cell = _fmt(v)
        out.append(f"**{cell}**" if best is not None and cell != MISSING and v == best else cell)
    return out


def results_table(frame: pd.DataFrame) -> List[str]:
    models = _order(frame["model"], D.MODELS)
    header = ["Dataset", "H"] + [f"{m} {k}" for m in models for k in ("MSE", "MAE")]
    rows = []
    for dataset, horizon in _configs(frame):
        hits = [_lookup(frame, dataset, horizon, m) for m in models]
        mse = [None if h is None else float(h["mse"]) for h in hits]
        mae = [None if h is None else float(h["mae"]) for h in hits]
        bold = _best_cells(mse)
        rows.append([dataset, str(horizon)] + [c for i in range(len(models)) for c in (bold[i], _fmt(mae[i]))])
    avg_mse = [float(frame.loc[frame["model"] == m, "mse"].mean()) for m in models]
    avg_mae = [float(frame.loc[frame["model"] == m, "mae"].mean()) for m in models]
    bold = _best_cells(avg_mse)
    rows.append(["Average", ""] + [c for i in range(len(models)) for c in (bold[i], _fmt(avg_mae[i]))])
    return _table(header, rows)


def gate_table(frame: pd.DataFrame) -> List[str]:
    mixer = frame[frame["model"] == "msmixer"]
    rows = [[str(r.dataset), str(int(r.horizon)), _fmt(r.w1), _fmt(r.w4), _fmt(r.w16)] for r in mixer.itertuples()]
    return _table(["Dataset", "H", "w1", "w4", "w16"], rows)


def fusion_table(frame: pd.DataFrame) -> List[str]:
    mixer = frame[frame["model"] == "msmixer"]
    rows = [[str(r.dataset), str(int(r.horizon)), _fmt(r.alpha), _fmt(r.trend_blend)] for r in mixer.itertuples()]
    return _table(["Dataset", "H", "alpha", "trend blend"], rows)


def params_table(frame: pd.DataFrame) -> List[str]:
    horizons = sorted(int(h) for h in frame["horizon"].unique())
    first = frame.groupby(["model", "horizon"], sort=False)["params"].first()
    rows = []
    for model in _order(frame["model"], D.MODELS):
        cells = []
        for h in horizons:
            value = first.get((model, h))
            cells.append(MISSING if value is None or pd.isna(value) else f"{round(float(value) / 1000)}K")
        rows.append([model] + cells)
    return _table(["Model"] + [f"H={h}" for h in horizons], rows)


def wins_table(frame: pd.DataFrame) -> List[str]:
    models = _order(frame["model"], D.MODELS)
    wins = dict.fromkeys(models, 0)
    configs = _configs(frame)
    for dataset, horizon in configs:
        sub = frame[(frame["dataset"] == dataset) & (frame["horizon"] == horizon)]
        if not sub.empty:
            wins[str(sub.loc[sub["mse"].idxmin(), "model"])] += 1
    rows = []
    for m in models:
        rel = MISSING
        if "dlinear" in models and m != "dlinear":
            pairs = []
            for dataset, horizon in configs:
                a, b = _lookup(frame, dataset, horizon, m), _lookup(frame, dataset, horizon, "dlinear")
                if a is not None and b is not None and float(b["mse"]) > 0:
                    pairs.append((float(a["mse"]) - float(b["mse"])) / float(b["mse"]) * 100.0)
            if pairs:
                rel = f"{sum(pairs) / len(pairs):+.1f}%"
        rows.append([m, f"{wins[m]}/{len(configs)}", rel])
    return _table(["Model", "Wins (MSE)", "MSE vs dlinear"], rows)


def render_markdown(frame: pd.DataFrame) -> str:
    sections = [
        ("Forecasting results (MSE / MAE, z-scored)", results_table(frame)),
        ("Scale gate weights (msmixer)", gate_table(frame)),
        ("Fusion and trend-blend weights (msmixer)", fusion_table(frame)),
        ("Parameters", params_table(frame)),
        ("Wins", wins_table(frame)),
    ]
    lines: List[str] = []
    for title, body in sections:
        lines += [f"## {title}", ""] + body + [""]
    return "\n".join(lines)


def write_report(run_dir: str | Path, dest: Optional[str | Path] = None) -> Tuple[Path, Path]:
    """Regenerate ``results.csv`` and ``results.md`` for the runs in ``run_dir``.

    Returns
    -------
    Tuple[Path, Path]
        Paths of the CSV and markdown files (written to ``dest`` or ``run_dir``).
    """
    frame = results_frame(collect_reports(run_dir))
    target = Path(dest) if dest is not None else Path(run_dir)
    target.mkdir(parents=True, exist_ok=True)
    csv_path = write_results_csv(frame, target / RESULTS_CSV)
    md_path = target / RESULTS_MD
    md_path.write_text(render_markdown(read_results_csv(csv_path)), encoding="utf-8")
    return csv_path, md_path


__all__ = [
    "CSV_COLUMNS",
    "RESULTS_CSV",
    "RESULTS_MD",
    "MISSING",
    "collect_reports",
    "results_frame",
    "write_results_csv",
    "read_results_csv",
    "render_markdown",
    "write_report",
]
