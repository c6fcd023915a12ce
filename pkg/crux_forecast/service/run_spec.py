"""Run specification and the serialized report of a finished run."""
from __future__ import annotations

from pathlib import Path
from typing import Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import ForecastSettings
from ..config import defaults as D
from ..models import ModelConfig, ModelKind
from ..trainer import TrainConfig


class RunSpec(BaseModel):
    """Everything needed to reproduce one (dataset, model, horizon) run.

    ``dataset`` is either a bare name resolved as ``<data_dir>/<dataset>.csv``
    or a path to a CSV file. ``variant`` labels ablation and sensitivity
    runs; it becomes part of :attr:`run_id` and of the report's model label.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    dataset: str
    data_dir: str = D.DATA_DIR
    model: ModelKind = "msmixer"
    horizon: int = Field(96, ge=1)
    lookback: int = Field(D.LOOKBACK, ge=1)
    scales: Tuple[int, ...] = D.SCALES
    hidden: int = Field(D.HIDDEN, ge=1)
    kernel: int = Field(D.MA_KERNEL, ge=1)
    use_shortcut: bool = True
    use_revin: bool = True
    train_cap: Optional[int] = Field(None, ge=1)
    dtype: Literal["float64", "float32"] = D.DTYPE
    variant: Optional[str] = None
    train: TrainConfig = TrainConfig()

    @model_validator(mode="after")
    def _variant_flags_need_msmixer(self) -> "RunSpec":
        if self.model != "msmixer" and not (self.use_shortcut and self.use_revin):
            raise ValueError("--no-shortcut / --no-revin only apply to the msmixer model")
        return self

    @property
    def dataset_name(self) -> str:
        return Path(self.dataset).stem if self.dataset.endswith(".csv") else self.dataset

    @property
    def csv_path(self) -> Path:
        if self.dataset.endswith(".csv"):
            return Path(self.dataset)
        return Path(self.data_dir) / f"{self.dataset}.csv"

    @property
    def label(self) -> str:
        """Model column label in reports (``msmixer`` or ``msmixer:no_shortcut``)."""
        return self.model if self.variant is None else f"{self.model}:{self.variant}"

    @property
    def run_id(self) -> str:
        model = self.model if self.variant is None else f"{self.model}-{self.variant}"
        return f"{self.dataset_name}_{model}_{self.horizon}_{self.train.seed}"

    def model_config_for(self, n_variates: int) -> ModelConfig:
        return ModelConfig(
            kind=self.model,
            lookback=self.lookback,
            horizon=self.horizon,
            n_variates=n_variates,
            hidden=self.hidden,
            scales=self.scales,
            kernel=self.kernel,
            dropout=self.train.dropout,
            use_revin=self.use_revin,
            use_shortcut=self.use_shortcut,
        )

    @classmethod
    def from_settings(cls, settings: ForecastSettings, dataset: str, model: str, horizon: int, **overrides) -> "RunSpec":
        """Build a spec from merged settings; ``overrides`` win over settings."""
        name = Path(dataset).stem if dataset.endswith(".csv") else dataset
        fields = dict(
            dataset=dataset,
            data_dir=settings.data_dir,
            model=model,
            horizon=horizon,
            lookback=settings.lookback,
            scales=settings.scales,
            hidden=settings.hidden,
            kernel=settings.kernel,
            train_cap=settings.train_cap_for(name),
            dtype=settings.dtype,
            train=TrainConfig.from_settings(settings),
        )
        fields.update(overrides)
        return cls(**fields)


class TraceSummary(BaseModel):
    model_config = ConfigDict(extra="forbid")

    epochs_run: int
    best_epoch: int
    best_val_loss: float
    stopped_early: bool
    final_lr: float
    wall_seconds: float


class RunReport(BaseModel):
    """Serialized outcome of one run (``report.json``)."""

    model_config = ConfigDict(extra="forbid")

    run_id: str
    spec: RunSpec
    mse: float
    mae: float
    n_cells: int
    params: int
    breakdown: Dict[str, int] = Field(default_factory=dict)
    gate_weights: Optional[Dict[int, float]] = None
    fusion_alpha: Optional[float] = None
    trend_blend: Optional[float] = None
    trace: TraceSummary
    warnings: Tuple[str, ...] = ()


__all__ = ["RunSpec", "RunReport", "TraceSummary"]
