"""CLI parser construction for forecast-cli.

This module wires subparsers but contains no execution logic. Subcommand
handlers live in ``cli_actions``.
"""
from __future__ import annotations

import argparse

from ...config import defaults as D

COMMANDS = ("train", "benchmark", "ablate", "sensitivity", "report")


def _scale_sets(value: str) -> list[tuple[int, ...]]:
    """Parse ``"1;1,4;1,4,16"`` into scale tuples."""
    try:
        return [tuple(int(s) for s in part.split(",") if s.strip()) for part in value.split(";") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid scale sets {value!r}: {exc}") from exc


def _common_flags() -> argparse.ArgumentParser:
    """Settings flags shared by every run command; unset flags stay ``None``."""
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("settings")
    g.add_argument("--config", default=None, help="flat key: value (YAML) or JSON settings file")
    g.add_argument("--log-level", default=None)
    g.add_argument("--log-file", default=None)
    g.add_argument("--data-dir", default=None)
    g.add_argument("--out", default=None)
    g.add_argument("--workers", type=int, default=None)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--dtype", choices=("float64", "float32"), default=None)
    g.add_argument("--lookback", type=int, default=None)
    g.add_argument("--scales", default=None, help="comma separated pooling factors, e.g. 1,4,16")
    g.add_argument("--hidden", type=int, default=None)
    g.add_argument("--kernel", type=int, default=None)
    g.add_argument("--lr", type=float, default=None)
    g.add_argument("--max-epochs", type=int, default=None)
    g.add_argument("--batch-size", type=int, default=None)
    g.add_argument("--patience", type=int, default=None)
    g.add_argument("--train-cap", type=int, default=None, help="cap on train steps (0 disables the ETTm default)")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Construct the top-level CLI parser and subcommands.

    Returns
    -------
    argparse.ArgumentParser
        Parser with ``train``, ``benchmark``, ``ablate``, ``sensitivity`` and
        ``report`` subcommands. No I/O happens here.
    """
    p = argparse.ArgumentParser(prog="forecast-cli", description="Multi-scale mixer forecasting benchmarks")
    sub = p.add_subparsers(dest="cmd")
    common = _common_flags()

    p_train = sub.add_parser("train", parents=[common], help="Train and evaluate one configuration")
    p_train.add_argument("--dataset", required=True, help="dataset name (resolved in --data-dir) or CSV path")
    p_train.add_argument("--model", choices=D.MODELS, default="msmixer")
    p_train.add_argument("--horizon", type=int, default=96)
    p_train.add_argument("--no-shortcut", action="store_true")
    p_train.add_argument("--no-revin", action="store_true")

    p_bench = sub.add_parser("benchmark", parents=[common], help="Run the datasets x horizons x models grid")
    p_bench.add_argument("--datasets", nargs="+", default=list(D.DATASETS))
    p_bench.add_argument("--horizons", nargs="+", type=int, default=list(D.HORIZONS))
    p_bench.add_argument("--models", nargs="+", choices=D.MODELS, default=list(D.MODELS))

    p_ablate = sub.add_parser("ablate", parents=[common], help="Component ablation of MSMixer")
    p_ablate.add_argument("--dataset", default="ETTh1")
    p_ablate.add_argument("--horizon", type=int, default=96)

    p_sens = sub.add_parser("sensitivity", parents=[common], help="Look-back and scale-set sweeps")
    p_sens.add_argument("--dataset", default="ETTh1")
    p_sens.add_argument("--horizon", type=int, default=96)
    p_sens.add_argument("--lookbacks", nargs="+", type=int, default=list(D.LOOKBACK_SWEEP))
    p_sens.add_argument(
        "--scale-sets",
        type=_scale_sets,
        default=[tuple(s) for s in D.SCALE_SWEEP],
        help='semicolon separated sets, e.g. "1;1,4;1,4,16"',
    )

    p_report = sub.add_parser("report", help="Regenerate result tables from stored run reports")
    p_report.add_argument("run_dir", help="directory holding <run_id>/report.json sub-directories")
    p_report.add_argument("--dest", default=None, help="output directory (defaults to run_dir)")
    p_report.add_argument("--log-level", default=None)

    return p


__all__ = ["COMMANDS", "build_parser"]
