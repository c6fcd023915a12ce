"""crux_forecast.config.defaults
=============================

Central place for the stable default values used across the forecasting
package: model shape, training protocol, data split ratios and benchmark grid.
They can be overridden through a config file, ``FORECAST_*`` environment
variables or CLI flags (see :func:`crux_forecast.config.get_settings`).

Only plain constants live here; nothing in this module imports from the rest
of the package.
"""

from __future__ import annotations

# ---- Model shape ----
LOOKBACK = 336
HIDDEN = 64
SCALES = (1, 4, 16)
MA_KERNEL = 25
DROPOUT = 0.1
# Standard deviation of the normal draw used for every weight matrix.
INIT_STD = 0.02
# RevIN stability constant (added to the window std).
REVIN_EPS = 1e-5

# ---- Training protocol ----
LR = 1e-3
WEIGHT_DECAY = 1e-4
ADAM_BETAS = (0.9, 0.999)
ADAM_EPS = 1e-8
BATCH_SIZE = 64
MAX_EPOCHS = 15
PATIENCE = 4
SEED = 42
CLIP = 1.0
PLATEAU_FACTOR = 0.5
PLATEAU_PATIENCE = 2

# ---- Data protocol ----
TRAIN_RATIO = 0.7
VAL_RATIO = 0.1
# Floor applied to the train-split std of each variate.
STD_FLOOR = 1e-8
# Minute-level ETT train split is capped to the hourly series length.
ETTM_TRAIN_CAP = 17420
CROSS_BORDER_CONTEXT = True

# ---- Benchmark grid ----
DATASETS = ("ETTh1", "ETTh2", "ETTm1", "ETTm2")
HORIZONS = (96, 192, 336, 720)
MODELS = ("msmixer", "dlinear", "nlinear")
LOOKBACK_SWEEP = (96, 192, 336, 512)
SCALE_SWEEP = ((1,), (1, 4), (1, 4, 16), (1, 2, 4, 16))

# ---- Service / CLI ----
DATA_DIR = "data"
OUT_DIR = "runs"
WORKERS = 1
DTYPE = "float64"
CONFIG_FILE_ENV = "FORECAST_CONFIG_FILE"
ENV_PREFIX = "FORECAST_"


def train_cap_for(dataset: str) -> int | None:
    """Return the default train-split cap for ``dataset`` (minute-level ETT only)."""
    return ETTM_TRAIN_CAP if dataset.lower().startswith("ettm") else None


__all__ = [
    "LOOKBACK",
    "HIDDEN",
    "SCALES",
    "MA_KERNEL",
    "DROPOUT",
    "INIT_STD",
    "REVIN_EPS",
    "LR",
    "WEIGHT_DECAY",
    "ADAM_BETAS",
    "ADAM_EPS",
    "BATCH_SIZE",
    "MAX_EPOCHS",
    "PATIENCE",
    "SEED",
    "CLIP",
    "PLATEAU_FACTOR",
    "PLATEAU_PATIENCE",
    "TRAIN_RATIO",
    "VAL_RATIO",
    "STD_FLOOR",
    "ETTM_TRAIN_CAP",
    "CROSS_BORDER_CONTEXT",
    "DATASETS",
    "HORIZONS",
    "MODELS",
    "LOOKBACK_SWEEP",
    "SCALE_SWEEP",
    "DATA_DIR",
    "OUT_DIR",
    "WORKERS",
    "DTYPE",
    "CONFIG_FILE_ENV",
    "ENV_PREFIX",
    "train_cap_for",
]
