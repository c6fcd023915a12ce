"""Run identity attached to every forecasting log event."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class LogContext:
    """Dataset, model label, horizon and run id of the run being logged.

    ``extra`` holds suite-level fields (``suite``, ``variant``). ``to_dict``
    flattens it and drops unset values.
    """

    dataset: Optional[str] = None
    model: Optional[str] = None
    horizon: Optional[int] = None
    run_id: Optional[str] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        merged: Dict[str, Any] = {"dataset": self.dataset, "model": self.model, "horizon": self.horizon, "run_id": self.run_id}
        merged.update(self.extra)
        return {k: v for k, v in merged.items() if v is not None}


__all__ = ["LogContext"]
