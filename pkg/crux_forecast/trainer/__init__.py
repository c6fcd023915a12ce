"""Training loop, evaluation metrics, diagnostics and traces."""

from .diagnostics import Diagnostics, extract_diagnostics
from .loop import TrainResult, evaluate, train
from .metrics import Metrics, compute_metrics, error_sums
from .trace import EpochRecord, read_trace, write_trace
from .train_config import TrainConfig

__all__ = [
    "Diagnostics",
    "extract_diagnostics",
    "TrainResult",
    "evaluate",
    "train",
    "Metrics",
    "compute_metrics",
    "error_sums",
    "EpochRecord",
    "read_trace",
    "write_trace",
    "TrainConfig",
]
