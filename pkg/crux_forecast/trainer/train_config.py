"""Training hyperparameters."""
from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from ..config import ForecastSettings
from ..config import defaults as D


class TrainConfig(BaseModel):
    """Optimization settings of one training run.

    ``lr`` may be zero (frozen weights), which is useful to exercise the
    stopping logic; every other rate or size must be positive.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    lr: float = Field(D.LR, ge=0.0)
    weight_decay: float = Field(D.WEIGHT_DECAY, ge=0.0)
    batch_size: int = Field(D.BATCH_SIZE, ge=1)
    max_epochs: int = Field(D.MAX_EPOCHS, ge=1)
    patience: int = Field(D.PATIENCE, ge=1)
    seed: int = D.SEED
    dropout: float = Field(D.DROPOUT, ge=0.0, lt=1.0)
    clip: float = Field(D.CLIP, gt=0.0)
    plateau_factor: float = Field(D.PLATEAU_FACTOR, gt=0.0, le=1.0)
    plateau_patience: int = Field(D.PLATEAU_PATIENCE, ge=0)
    cross_border: bool = D.CROSS_BORDER_CONTEXT

    @classmethod
    def from_settings(cls, settings: ForecastSettings) -> "TrainConfig":
        return cls(
            lr=settings.lr,
            weight_decay=settings.weight_decay,
            batch_size=settings.batch_size,
            max_epochs=settings.max_epochs,
            patience=settings.patience,
            seed=settings.seed,
            dropout=settings.dropout,
            clip=settings.clip,
            cross_border=settings.cross_border,
        )


__all__ = ["TrainConfig"]
