"""Central finite-difference gradient checker.

``check_gradients`` compares the analytic gradient of every parameter in a
:class:`ParamStore` with central differences of a scalar loss. Run it in
float64 with dropout disabled.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from .params import ParamStore
from .tape import Tape, Var, backward

LossFn = Callable[[Optional[Tape]], Var]


@dataclass(frozen=True)
class GradCheckResult:
    """Per-parameter comparison of analytic and numeric gradients."""

    name: str
    rel_error: float
    analytic_norm: float
    numeric_norm: float


def relative_error(analytic: np.ndarray, numeric: np.ndarray, floor: float = 1e-10) -> float:
    """``||a - n|| / max(||a||, ||n||, floor)``."""
    denom = max(float(np.linalg.norm(analytic)), float(np.linalg.norm(numeric)), floor)
    return float(np.linalg.norm(analytic - numeric)) / denom


def numeric_gradient(loss_fn: LossFn, value: np.ndarray, h: float = 1e-4) -> np.ndarray:
    """Central differences of ``loss_fn(None)`` w.r.t. ``value`` (perturbed in place)."""
    grad = np.zeros_like(value)
    flat = value.reshape(-1)
    out = grad.reshape(-1)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + h
        plus = float(loss_fn(None).value.reshape(-1)[0])
        flat[i] = orig - h
        minus = float(loss_fn(None).value.reshape(-1)[0])
        flat[i] = orig
        out[i] = (plus - minus) / (2.0 * h)
    return grad


def check_gradients(loss_fn: LossFn, params: ParamStore, h: float = 1e-4) -> Dict[str, GradCheckResult]:
    """Compare analytic and numeric gradients for every parameter.

    Parameters
    ----------
    loss_fn: Callable[[Optional[Tape]], Var]
        Builds the forward graph; called with a fresh tape for the analytic
        pass and with ``None`` for the numeric probes.
    params: ParamStore
        Parameters the loss depends on.
    h: float
        Finite-difference step.

    Returns
    -------
    Dict[str, GradCheckResult]
        Keyed by parameter name, in registration order.
    """
    params.zero_grad()
    tape = Tape()
    backward(loss_fn(tape), params)
    results: Dict[str, GradCheckResult] = {}
    for p in params:
        analytic = p.grad.copy()
        numeric = numeric_gradient(loss_fn, p.value, h)
        results[p.name] = GradCheckResult(
            name=p.name,
            rel_error=relative_error(analytic, numeric),
            analytic_norm=float(np.linalg.norm(analytic)),
            numeric_norm=float(np.linalg.norm(numeric)),
        )
    return results


__all__ = ["GradCheckResult", "relative_error", "numeric_gradient", "check_gradients", "LossFn"]
