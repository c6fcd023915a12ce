"""Validated model configuration shared by every model kind."""
from __future__ import annotations

from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..config import defaults as D

ModelKind = Literal["msmixer", "dlinear", "nlinear"]


class ModelConfig(BaseModel):
    """Shape and variant switches of a forecasting model.

    Attributes
    ----------
    kind: ModelKind
        ``msmixer``, ``dlinear`` (trend + seasonal linear sum) or ``nlinear``
        (last-value subtraction + one linear map).
    lookback, horizon, n_variates: int
        Window geometry (T, H, N).
    hidden: int
        Branch MLP width d (MSMixer only).
    scales: Tuple[int, ...]
        Pooling factors; each must divide ``lookback`` (MSMixer only).
    kernel: int
        Odd moving-average kernel (MSMixer shortcut and DLinear).
    use_revin: bool
        MSMixer instance normalization; ``False`` is the "w/o RevIN" variant.
    use_shortcut: bool
        MSMixer fusion with the linear shortcut; ``False`` removes the fusion
        scalar and routes the multi-scale pathway alone (shortcut weights are
        still constructed).
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: ModelKind = "msmixer"
    lookback: int = Field(D.LOOKBACK, ge=1)
    horizon: int = Field(96, ge=1)
    n_variates: int = Field(7, ge=1)
    hidden: int = Field(D.HIDDEN, ge=1)
    scales: Tuple[int, ...] = D.SCALES
    kernel: int = Field(D.MA_KERNEL, ge=1)
    dropout: float = Field(D.DROPOUT, ge=0.0, lt=1.0)
    use_revin: bool = True
    use_shortcut: bool = True
    init_std: float = Field(D.INIT_STD, gt=0.0)
    revin_eps: float = Field(D.REVIN_EPS, gt=0.0)

    @field_validator("scales")
    @classmethod
    def _scales_distinct_positive(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if not value or any(s < 1 for s in value) or len(set(value)) != len(value):
            raise ValueError("scales must be distinct positive integers")
        return tuple(value)

    @model_validator(mode="after")
    def _check_geometry(self) -> "ModelConfig":
        if self.kind in ("msmixer", "dlinear"):
            if self.kernel % 2 == 0:
                raise ValueError(f"moving-average kernel must be odd, got {self.kernel}")
            if self.kernel > self.lookback:
                raise ValueError(f"kernel {self.kernel} exceeds lookback {self.lookback}")
        if self.kind == "msmixer":
            bad = [s for s in self.scales if self.lookback % s]
            if bad:
                raise ValueError(f"scales {bad} do not divide lookback {self.lookback}")
        return self


__all__ = ["ModelConfig", "ModelKind"]
