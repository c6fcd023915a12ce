"""Forecasting models: MSMixer, DLinear, NLinear and their building blocks."""

from .baselines import DLinear, NLinear, baseline_forward
from .branch import ScaleBranch, branch_forward
from .checkpoint import load_checkpoint, save_checkpoint
from .factory import build_model, known_kinds
from .gate import ScaleGate, gate_merge
from .interfaces import ForecastModel, predict
from .model_config import ModelConfig, ModelKind
from .msmixer import MSMixer, msmixer_forward
from .param_count import ParamCount, closed_form_total, count_params
from .revin import RevIN, RevINStats
from .shortcut import DLinearShortcut, shortcut_forward

__all__ = [
    "DLinear",
    "NLinear",
    "baseline_forward",
    "ScaleBranch",
    "branch_forward",
    "load_checkpoint",
    "save_checkpoint",
    "build_model",
    "known_kinds",
    "ScaleGate",
    "gate_merge",
    "ForecastModel",
    "predict",
    "ModelConfig",
    "ModelKind",
    "MSMixer",
    "msmixer_forward",
    "ParamCount",
    "closed_form_total",
    "count_params",
    "RevIN",
    "RevINStats",
    "DLinearShortcut",
    "shortcut_forward",
]
