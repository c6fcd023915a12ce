"""Minimal dense-tensor kernel: params, rng, tape-based reverse mode, ops."""

from .params import Param, ParamStore
from .rng import Rng
from .tape import Tape, Var, backward, constant, leaf
from .tensor import Tensor2D, all_finite, as_tensor2d, check_shape, resolve_dtype
from . import ops

__all__ = [
    "Param",
    "ParamStore",
    "Rng",
    "Tape",
    "Var",
    "backward",
    "constant",
    "leaf",
    "Tensor2D",
    "all_finite",
    "as_tensor2d",
    "check_shape",
    "resolve_dtype",
    "ops",
]
