"""Forward ops with analytic backward closures.

Every op takes :class:`~crux_forecast.numerics.tape.Var` inputs and returns a
``Var``. When at least one input requires gradients the op records a closure
on that input's tape; otherwise it is a plain forward computation.

Shapes follow the channel-independent layout: rows are (sample, variate)
pairs and columns are time steps.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import special

from ..base.errors import config_error
from .rng import Rng
from .tape import BackwardFn, Var

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _track(value: np.ndarray, inputs: Sequence[Var], backward_fn: BackwardFn) -> Var:
    tape = next((v.tape for v in inputs if v.requires_grad and v.tape is not None), None)
    out = Var(value)
    if tape is None:
        return out
    return tape.record(out, backward_fn)


# ---------------------------------------------------------------- affine maps
def linear(x: Var, w: Var, b: Optional[Var] = None) -> Var:
    """``y[i, j] = sum_k w[j, k] * x[i, k] + b[j]``.

    ``x`` is (B, in), ``w`` is (out, in), ``b`` is (out,).
    """
    if x.value.ndim != 2 or w.value.ndim != 2 or x.shape[1] != w.shape[1]:
        raise config_error("numerics", f"linear: input {x.shape} does not match weight {w.shape}", field="linear")
    if b is not None and b.shape != (w.shape[0],):
        raise config_error("numerics", f"linear: bias {b.shape} does not match weight {w.shape}", field="linear")
    y = x.value @ w.value.T
    if b is not None:
        y = y + b.value

    def backward_fn(g: np.ndarray) -> None:
        x.accumulate(g @ w.value)
        w.accumulate(g.T @ x.value)
        if b is not None:
            b.accumulate(g.sum(axis=0))

    inputs = (x, w) if b is None else (x, w, b)
    return _track(y, inputs, backward_fn)


def add(a: Var, b: Var) -> Var:
    if a.shape != b.shape:
        raise config_error("numerics", f"add: shapes {a.shape} and {b.shape} differ", field="add")

    def backward_fn(g: np.ndarray) -> None:
        a.accumulate(g)
        b.accumulate(g)

    return _track(a.value + b.value, (a, b), backward_fn)


def sub(a: Var, b: Var) -> Var:
    if a.shape != b.shape:
        raise config_error("numerics", f"sub: shapes {a.shape} and {b.shape} differ", field="sub")

    def backward_fn(g: np.ndarray) -> None:
        a.accumulate(g)
        b.accumulate(-g)

    return _track(a.value - b.value, (a, b), backward_fn)


def affine_const(x: Var, scale: np.ndarray | float, shift: np.ndarray | float) -> Var:
    """``x * scale + shift`` with constant (non-learnable) ``scale``/``shift``.

    Used for detached statistics: RevIN centring, last-value subtraction.
    """
    scale_arr = np.asarray(scale, dtype=x.value.dtype)

    def backward_fn(g: np.ndarray) -> None:
        x.accumulate(g * scale_arr)

    return _track(x.value * scale_arr + shift, (x,), backward_fn)


def tile_rows(v: Var, repeats: int) -> Var:
    """Repeat a per-variate vector (N,) for ``repeats`` samples -> (repeats*N,).

    Row ``b*N + n`` receives ``v[n]``, matching the (B, N) -> B*N row layout.
    """
    n = v.shape[0]

    def backward_fn(g: np.ndarray) -> None:
        v.accumulate(g.reshape(repeats, n).sum(axis=0))

    return _track(np.tile(v.value, repeats), (v,), backward_fn)


def row_affine(z: Var, scale: Var, shift: Var) -> Var:
    """``out[r, t] = z[r, t] * scale[r] + shift[r]``."""
    s = scale.value[:, None]

    def backward_fn(g: np.ndarray) -> None:
        z.accumulate(g * s)
        scale.accumulate((g * z.value).sum(axis=1))
        shift.accumulate(g.sum(axis=1))

    return _track(z.value * s + shift.value[:, None], (z, scale, shift), backward_fn)


def row_affine_inverse(z: Var, scale: Var, shift: Var, guard: float) -> Var:
    """``out[r, t] = (z[r, t] - shift[r]) / (scale[r] + guard)``."""
    denom = scale.value[:, None] + guard
    centred = z.value - shift.value[:, None]
    out = centred / denom

    def backward_fn(g: np.ndarray) -> None:
        gz = g / denom
        z.accumulate(gz)
        shift.accumulate(-gz.sum(axis=1))
        scale.accumulate(-(g * centred / (denom * denom)).sum(axis=1))

    return _track(out, (z, scale, shift), backward_fn)


# ------------------------------------------------------------- activations
def gelu(x: Var) -> Var:
    """Exact GELU ``x * Phi(x)`` (standard normal CDF, erf form)."""
    cdf = special.ndtr(x.value)

    def backward_fn(g: np.ndarray) -> None:
        pdf = np.exp(-0.5 * x.value * x.value) * _INV_SQRT_2PI
        x.accumulate(g * (cdf + x.value * pdf))

    return _track(x.value * cdf, (x,), backward_fn)


def sigmoid(x: float | np.ndarray) -> float | np.ndarray:
    """Logistic function ``1 / (1 + exp(-x))`` (overflow safe)."""
    return special.expit(x)


def softmax_values(v: np.ndarray) -> np.ndarray:
    """Max-shifted softmax over the last axis."""
    shifted = v - np.max(v, axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def softmax(v: Var) -> Var:
    w = softmax_values(v.value)

    def backward_fn(g: np.ndarray) -> None:
        v.accumulate(w * (g - np.sum(w * g)))

    return _track(w, (v,), backward_fn)


def dropout(x: Var, rate: float, training: bool, rng: Optional[Rng]) -> Var:
    """Inverted dropout. Eval mode (or ``rate == 0``) returns ``x`` itself."""
    if not 0.0 <= rate < 1.0:
        raise config_error("numerics", f"dropout rate must be in [0, 1), got {rate}", field="dropout")
    if not training or rate == 0.0:
        return x
    if rng is None:
        raise config_error("numerics", "training-mode dropout needs an rng", field="rng")
    keep = 1.0 - rate
    mask = (rng.uniform(x.shape) >= rate).astype(x.value.dtype) / keep

    def backward_fn(g: np.ndarray) -> None:
        x.accumulate(g * mask)

    return _track(x.value * mask, (x,), backward_fn)


# ------------------------------------------------------- temporal operators
def avg_pool(x: Var, s: int) -> Var:
    """Non-overlapping window means along time; output width ``floor(T / s)``."""
    rows, width = x.shape
    if s < 1 or s > width:
        raise config_error("numerics", f"pool factor {s} invalid for width {width}", field="scale")
    if s == 1:
        return x
    n = width // s
    used = n * s
    pooled = x.value[:, :used].reshape(rows, n, s).mean(axis=2)

    def backward_fn(g: np.ndarray) -> None:
        dx = np.zeros_like(x.value)
        dx[:, :used] = np.repeat(g / s, s, axis=1)
        x.accumulate(dx)

    return _track(pooled, (x,), backward_fn)


@lru_cache(maxsize=32)
def moving_average_matrix(width: int, kernel: int) -> np.ndarray:
    """(width, width) matrix ``M`` with ``trend = x @ M``.

    Edges are padded by replicating the first/last value ``(kernel-1)/2``
    times; column ``t`` averages padded positions ``t .. t+kernel-1``.
    """
    if kernel < 1 or kernel % 2 == 0:
        raise config_error("numerics", f"moving-average kernel must be odd, got {kernel}", field="kernel")
    if kernel > width:
        raise config_error("numerics", f"kernel {kernel} longer than window {width}", field="kernel")
    pad = (kernel - 1) // 2
    m = np.zeros((width, width))
    for t in range(width):
        src = np.clip(np.arange(t - pad, t + pad + 1), 0, width - 1)
        np.add.at(m[:, t], src, 1.0 / kernel)
    m.setflags(write=False)
    return m


def moving_average(x: Var, kernel: int) -> Var:
    m = moving_average_matrix(x.shape[1], kernel).astype(x.value.dtype, copy=False)

    def backward_fn(g: np.ndarray) -> None:
        x.accumulate(g @ m.T)

    return _track(x.value @ m, (x,), backward_fn)


def decompose(x: Var, kernel: int) -> Tuple[Var, Var]:
    """Split ``x`` into (trend, seasonal) with ``trend + seasonal == x``."""
    trend = moving_average(x, kernel)
    return trend, sub(x, trend)


# ------------------------------------------------------------ combinations
def weighted_sum(outputs: Sequence[Var], weights: Var) -> Var:
    """``sum_k weights[k] * outputs[k]`` for same-shaped outputs."""
    if len(outputs) != weights.shape[0]:
        raise config_error(
            "numerics", f"{len(outputs)} outputs for {weights.shape[0]} weights", field="gate"
        )
    shape = outputs[0].shape
    if any(o.shape != shape for o in outputs):
        raise config_error("numerics", "weighted_sum: outputs must share one shape", field="gate")
    w = weights.value
    total = np.zeros_like(outputs[0].value)
    for k, o in enumerate(outputs):
        total += w[k] * o.value

    def backward_fn(g: np.ndarray) -> None:
        dw = np.empty_like(w)
        for k, o in enumerate(outputs):
            o.accumulate(w[k] * g)
            dw[k] = np.sum(g * o.value)
        weights.accumulate(dw)

    return _track(total, (*outputs, weights), backward_fn)


def gate_merge(outputs: Sequence[Var], logits: Var) -> Var:
    """Softmax(logits)-weighted sum of branch outputs."""
    if len(outputs) != logits.shape[0]:
        raise config_error(
            "numerics", f"{len(outputs)} branch outputs for {logits.shape[0]} gate logits", field="gate"
        )
    return weighted_sum(outputs, softmax(logits))


def sigmoid_blend(logit: Var, a: Var, b: Var) -> Var:
    """``sigmoid(logit) * a + (1 - sigmoid(logit)) * b`` for a scalar logit."""
    if a.shape != b.shape:
        raise config_error("numerics", f"blend: shapes {a.shape} and {b.shape} differ", field="blend")
    p = float(sigmoid(logit.value.reshape(-1)[0]))
    out = p * a.value + (1.0 - p) * b.value

    def backward_fn(g: np.ndarray) -> None:
        a.accumulate(p * g)
        b.accumulate((1.0 - p) * g)
        logit.accumulate(np.full(logit.shape, np.sum(g * (a.value - b.value)) * p * (1.0 - p)))

    return _track(out, (logit, a, b), backward_fn)


# -------------------------------------------------------------------- losses
def mse(pred: Var, target: Var) -> Var:
    """Mean squared error over every cell, returned as a (1,)-shaped Var."""
    if pred.shape != target.shape:
        raise config_error("numerics", f"mse: {pred.shape} vs {target.shape}", field="target")
    diff = pred.value - target.value
    n = diff.size

    def backward_fn(g: np.ndarray) -> None:
        scale = 2.0 * float(g.reshape(-1)[0]) / n
        pred.accumulate(scale * diff)
        target.accumulate(-scale * diff)

    return _track(np.array([np.mean(diff * diff)], dtype=pred.value.dtype), (pred, target), backward_fn)


__all__ = [
    "linear",
    "add",
    "sub",
    "affine_const",
    "tile_rows",
    "row_affine",
    "row_affine_inverse",
    "gelu",
    "sigmoid",
    "softmax_values",
    "softmax",
    "dropout",
    "avg_pool",
    "moving_average_matrix",
    "moving_average",
    "decompose",
    "weighted_sum",
    "gate_merge",
    "sigmoid_blend",
    "mse",
]
