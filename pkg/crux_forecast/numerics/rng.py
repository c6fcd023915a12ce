"""Seeded random source shared by initialization, shuffling and dropout.

Draw order within a run: parameter initialization (registration order), then
per epoch one shuffle permutation followed by the dropout masks of each batch
in branch order.
"""
from __future__ import annotations

import hashlib
from typing import Sequence

import numpy as np


class Rng:
    """Thin wrapper over ``numpy.random.Generator`` (PCG64)."""

    def __init__(self, seed: int) -> None:
        self.seed = int(seed)
        self._gen = np.random.default_rng(self.seed)

    @classmethod
    def for_config(cls, seed: int, key: str) -> "Rng":
        """Derive an independent stream from ``(seed, key)``.

        Grid workers use this so concurrent runs never share generator state.
        """
        digest = hashlib.sha256(key.encode("utf-8")).digest()
        entropy = int.from_bytes(digest[:8], "little")
        child = np.random.SeedSequence([int(seed), entropy])
        rng = cls(seed)
        rng._gen = np.random.default_rng(child)
        return rng

    def normal(self, shape: Sequence[int], std: float, dtype: np.dtype = np.float64) -> np.ndarray:
        return (self._gen.standard_normal(tuple(shape)) * std).astype(dtype, copy=False)

    def uniform(self, shape: Sequence[int]) -> np.ndarray:
        return self._gen.random(tuple(shape))

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)


__all__ = ["Rng"]
