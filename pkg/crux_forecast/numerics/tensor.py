"""Tensor2D helpers.

A ``Tensor2D`` is a C-contiguous two-dimensional ``numpy.ndarray`` of real
values. Bias vectors and gate logits are kept one-dimensional. The helpers
below centralize shape checks so every op reports a mismatch the same way.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np
import numpy.typing as npt

from ..base.errors import config_error

Tensor2D = npt.NDArray[np.floating]

DTYPES = {"float64": np.float64, "float32": np.float32}


def resolve_dtype(name: str) -> np.dtype:
    """Map a dtype name (``float64``/``float32``) to a numpy dtype."""
    try:
        return np.dtype(DTYPES[name])
    except KeyError:
        raise config_error("numerics", f"unsupported dtype {name!r}", field="dtype") from None


def as_tensor2d(values: npt.ArrayLike, dtype: npt.DTypeLike = np.float64) -> Tensor2D:
    """Return ``values`` as a contiguous 2-D array (1-D input becomes one row)."""
    arr = np.ascontiguousarray(values, dtype=dtype)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise config_error("numerics", f"expected a 2-D tensor, got {arr.ndim} dims", field="shape")
    return arr


def check_shape(arr: np.ndarray, expected: Sequence[int | None], what: str, component: str = "numerics") -> None:
    """Raise a configuration error unless ``arr.shape`` matches ``expected``.

    ``None`` entries in ``expected`` match any extent.
    """
    if arr.ndim != len(expected) or any(e is not None and e != a for e, a in zip(expected, arr.shape)):
        want = "x".join("*" if e is None else str(e) for e in expected)
        got = "x".join(str(a) for a in arr.shape)
        raise config_error(component, f"{what}: expected shape {want}, got {got}", field=what)


def all_finite(*arrays: np.ndarray) -> bool:
    """True when every value of every array is finite."""
    return all(bool(np.isfinite(a).all()) for a in arrays)


__all__ = ["Tensor2D", "DTYPES", "resolve_dtype", "as_tensor2d", "check_shape", "all_finite"]
