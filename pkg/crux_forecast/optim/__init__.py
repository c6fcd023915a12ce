"""Optimization: AdamW, gradient clipping, plateau scheduling and early stopping."""

from .adamw import AdamW, AdamWState, adamw_step
from .clipping import clip_grad_norm
from .early_stopping import EarlyStopper, StopDecision, early_stop_check
from .scheduler import PlateauScheduler, scheduler_step

__all__ = [
    "AdamW",
    "AdamWState",
    "adamw_step",
    "clip_grad_norm",
    "EarlyStopper",
    "StopDecision",
    "early_stop_check",
    "PlateauScheduler",
    "scheduler_step",
]
