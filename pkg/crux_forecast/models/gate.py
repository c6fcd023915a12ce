"""Softmax gate over scale branches (logits start at zero: uniform weights)."""
from __future__ import annotations

from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..numerics import ParamStore, Tape, Var, leaf, ops


class ScaleGate:
    def __init__(self, store: ParamStore, scales: Sequence[int], prefix: str = "gate") -> None:
        self.scales: Tuple[int, ...] = tuple(scales)
        self.logits = store.add(f"{prefix}.logits", (len(self.scales),), "zeros")

    @property
    def param_count(self) -> int:
        return self.logits.size

    def weights(self) -> np.ndarray:
        return ops.softmax_values(self.logits.value)

    def weights_by_scale(self) -> Dict[int, float]:
        return {s: float(w) for s, w in zip(self.scales, self.weights())}

    def merge(self, outputs: Sequence[Var], tape: Optional[Tape] = None) -> Var:
        return ops.gate_merge(outputs, leaf(self.logits, tape))


def gate_merge(outputs: Sequence[Var], gate: ScaleGate, tape: Optional[Tape] = None) -> Var:
    """Softmax(gate logits)-weighted sum of same-shaped branch outputs."""
    return gate.merge(outputs, tape)


__all__ = ["ScaleGate", "gate_merge"]
