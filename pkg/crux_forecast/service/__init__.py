"""Run orchestration, grids, reports and the command-line interface."""

from .grid import ABLATION_VARIANTS, RunOutcome, ablation_specs, benchmark_specs, run_grid, sensitivity_specs
from .reporting import collect_reports, read_results_csv, render_markdown, results_frame, write_report
from .run_spec import RunReport, RunSpec, TraceSummary
from .runs import execute_run, load_report

__all__ = [
    "ABLATION_VARIANTS",
    "RunOutcome",
    "ablation_specs",
    "benchmark_specs",
    "run_grid",
    "sensitivity_specs",
    "collect_reports",
    "read_results_csv",
    "render_markdown",
    "results_frame",
    "write_report",
    "RunReport",
    "RunSpec",
    "TraceSummary",
    "execute_run",
    "load_report",
]
