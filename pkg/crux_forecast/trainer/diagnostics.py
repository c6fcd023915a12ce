"""Learned mixing weights and size of a model."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from ..models import MSMixer
from ..models.interfaces import ForecastModel


@dataclass(frozen=True)
class Diagnostics:
    """Snapshot of the interpretable scalars of a model.

    ``gate_weights`` (scale -> softmax weight), ``fusion_alpha`` and
    ``trend_blend`` are ``None`` for models that do not have them (the linear
    baselines, or ``fusion_alpha`` for the no-shortcut variant).
    """

    param_total: int
    epochs_run: int = 0
    gate_weights: Optional[Dict[int, float]] = None
    fusion_alpha: Optional[float] = None
    trend_blend: Optional[float] = None
    breakdown: Dict[str, int] = field(default_factory=dict)


def extract_diagnostics(model: ForecastModel, epochs_run: int = 0) -> Diagnostics:
    gate = alpha = blend = None
    if isinstance(model, MSMixer):
        gate = model.gate_weights()
        alpha = model.fusion_alpha()
        blend = model.trend_blend()
    return Diagnostics(
        param_total=model.params.total(),
        epochs_run=epochs_run,
        gate_weights=gate,
        fusion_alpha=alpha,
        trend_blend=blend,
        breakdown=model.breakdown(),
    )


__all__ = ["Diagnostics", "extract_diagnostics"]
