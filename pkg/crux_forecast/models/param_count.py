"""Exact parameter accounting.

``count_params`` reads a constructed model; ``closed_form_total`` evaluates the
closed form from the configuration alone. The two must agree for every kind
and variant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Sequence

from ..base.errors import ErrorCode, ForecastError, config_error
from ..config import defaults as D
from .interfaces import ForecastModel


@dataclass(frozen=True)
class ParamCount:
    total: int
    rows: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {"total": self.total, "rows": dict(self.rows)}


def count_params(model: ForecastModel) -> ParamCount:
    """Per-module and total parameter counts of a constructed model."""
    rows = model.breakdown()
    total = model.params.total()
    if sum(rows.values()) != total:
        raise ForecastError(
            ErrorCode.INTERNAL,
            f"breakdown sums to {sum(rows.values())} but the store holds {total} parameters",
            "models",
            field=model.kind,
        )
    return ParamCount(total=total, rows=rows)


def branch_params(lookback: int, horizon: int, hidden: int, scale: int) -> int:
    """``d*(T/s) + d + H*d + H``."""
    return hidden * (lookback // scale) + hidden + horizon * hidden + horizon


def projection_params(lookback: int, horizon: int) -> int:
    """``T*H + H`` (one linear map with bias)."""
    return lookback * horizon + horizon


def closed_form_total(
    kind: str,
    lookback: int,
    horizon: int,
    hidden: int = D.HIDDEN,
    scales: Sequence[int] = D.SCALES,
    n_variates: int = 7,
    use_revin: bool = True,
    use_shortcut: bool = True,
) -> int:
    """Closed-form parameter total for ``kind`` and variant switches."""
    proj = projection_params(lookback, horizon)
    if kind == "nlinear":
        return proj
    if kind == "dlinear":
        return 2 * proj
    if kind != "msmixer":
        raise config_error("models", f"unknown model kind {kind!r}", field="kind")
    total = sum(branch_params(lookback, horizon, hidden, s) for s in scales)
    total += len(scales)  # gate logits
    total += 2 * proj + 1  # shortcut projections + trend blend
    if use_revin:
        total += 2 * n_variates
    if use_shortcut:
        total += 1  # fusion
    return total


__all__ = ["ParamCount", "count_params", "branch_params", "projection_params", "closed_form_total"]
