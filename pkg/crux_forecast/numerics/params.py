"""Named learnable parameters with paired gradient buffers.

``ParamStore`` keeps parameters in registration order. Models register in a
fixed order for a given configuration, so initialization draws from a seeded
:class:`~crux_forecast.numerics.rng.Rng` are reproducible and checkpoints list
entries deterministically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Literal, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..base.errors import config_error, usage_error
from .rng import Rng

Init = Literal["normal", "zeros", "ones"]


@dataclass
class Param:
    """One learnable tensor and its gradient buffer (same shape)."""

    name: str
    value: np.ndarray
    grad: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.grad = np.zeros_like(self.value)

    @property
    def size(self) -> int:
        return int(self.value.size)


class ParamStore:
    """Ordered collection of :class:`Param` entries.

    Attributes
    ----------
    rng_seed: Optional[int]
        Seed of the generator used for initialization draws (informational).
    grad_ready: bool
        Set by a backward pass, cleared by :meth:`zero_grad`. Optimizer steps
        require it.
    """

    def __init__(self, dtype: np.dtype | type = np.float64, rng_seed: Optional[int] = None) -> None:
        self.dtype = np.dtype(dtype)
        self.rng_seed = rng_seed
        self.grad_ready = False
        self._entries: Dict[str, Param] = {}

    def add(
        self,
        name: str,
        shape: Sequence[int],
        init: Init = "normal",
        rng: Optional[Rng] = None,
        std: float = 0.02,
    ) -> Param:
        """Register a new parameter and draw its initial value.

        Failure Modes
        -------------
        - Duplicate name: configuration error.
        - ``init="normal"`` without an ``rng``: usage error.
        """
        if name in self._entries:
            raise config_error("numerics", f"duplicate parameter name {name!r}", field=name)
        shape = tuple(int(s) for s in shape)
        if init == "normal":
            if rng is None:
                raise usage_error("numerics", f"parameter {name!r} needs an rng for normal init", field=name)
            value = rng.normal(shape, std, dtype=self.dtype)
        elif init == "zeros":
            value = np.zeros(shape, dtype=self.dtype)
        else:
            value = np.ones(shape, dtype=self.dtype)
        param = Param(name, value)
        self._entries[name] = param
        return param

    def __getitem__(self, name: str) -> Param:
        try:
            return self._entries[name]
        except KeyError:
            raise config_error("numerics", f"unknown parameter {name!r}", field=name) from None

    def __contains__(self, name: object) -> bool:
        return name in self._entries

    def __iter__(self) -> Iterator[Param]:
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def names(self) -> List[str]:
        return list(self._entries)

    def total(self) -> int:
        """Exact number of scalar parameters."""
        return sum(p.size for p in self._entries.values())

    def zero_grad(self) -> None:
        for p in self._entries.values():
            p.grad.fill(0.0)
        self.grad_ready = False

    def mark_grad_ready(self) -> None:
        self.grad_ready = True

    def grad_norm(self) -> float:
        """Global L2 norm over every gradient buffer."""
        return float(np.sqrt(sum(float(np.vdot(p.grad, p.grad)) for p in self._entries.values())))

    def snapshot(self) -> Dict[str, np.ndarray]:
        """Copy of every value, keyed by name (in-memory checkpoint)."""
        return {name: p.value.copy() for name, p in self._entries.items()}

    def restore(self, state: Mapping[str, np.ndarray]) -> None:
        """Load values from a snapshot; names and shapes must match exactly."""
        missing = set(self._entries) ^ set(state)
        if missing:
            raise config_error("numerics", f"snapshot names differ: {sorted(missing)}", field="state")
        for name, p in self._entries.items():
            src = np.asarray(state[name])
            if src.shape != p.value.shape:
                raise config_error(
                    "numerics", f"shape mismatch for {name}: {src.shape} vs {p.value.shape}", field=name
                )
            p.value[...] = src

    def shapes(self) -> List[Tuple[str, Tuple[int, ...]]]:
        return [(name, tuple(p.value.shape)) for name, p in self._entries.items()]


__all__ = ["Param", "ParamStore", "Init"]
