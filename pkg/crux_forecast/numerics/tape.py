"""Reverse-mode gradient recording for the fixed model graphs.

A :class:`Tape` records, in forward order, each op output together with a
closure that pushes the output gradient to the op inputs. ``backward`` seeds
the scalar loss with 1, replays the closures in reverse and finally adds the
gradients reaching watched parameters into their :class:`Param` buffers.

Ops receive :class:`Var` inputs. A ``Var`` created without a tape (or by
:meth:`Tape.constant`) does not require gradients, so an untracked forward
pass (evaluation) runs the exact same code path with nothing recorded.
"""
from __future__ import annotations

from typing import Callable, List, Optional, Tuple

import numpy as np

from ..base.errors import usage_error
from .params import Param, ParamStore

BackwardFn = Callable[[np.ndarray], None]


class Var:
    """Value carrier flowing through ops.

    Attributes
    ----------
    value: np.ndarray
        Forward value.
    grad: Optional[np.ndarray]
        Accumulated upstream gradient (``None`` until something flows back).
    requires_grad: bool
        Whether ops should record a backward closure for this input.
    tape: Optional[Tape]
        Tape the value belongs to (``None`` for untracked values).
    param: Optional[Param]
        Backing parameter when the Var is a watched leaf.
    """

    __slots__ = ("value", "grad", "requires_grad", "tape", "param")

    def __init__(
        self,
        value: np.ndarray,
        *,
        tape: Optional["Tape"] = None,
        requires_grad: bool = False,
        param: Optional[Param] = None,
    ) -> None:
        self.value = value
        self.grad: Optional[np.ndarray] = None
        self.requires_grad = requires_grad
        self.tape = tape
        self.param = param

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.value.shape)

    def accumulate(self, g: np.ndarray) -> None:
        if not self.requires_grad:
            return
        if self.grad is None:
            self.grad = np.array(g, dtype=self.value.dtype, copy=True).reshape(self.value.shape)
        else:
            self.grad += g.reshape(self.value.shape)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        tag = f" param={self.param.name}" if self.param is not None else ""
        return f"Var(shape={self.shape}, requires_grad={self.requires_grad}{tag})"


class Tape:
    """Ordered record of forward ops for one forward/backward pass."""

    def __init__(self) -> None:
        self._nodes: List[Tuple[Var, BackwardFn]] = []
        self._watched: List[Var] = []
        self._consumed = False

    def __len__(self) -> int:
        return len(self._nodes)

    def watch(self, param: Param) -> Var:
        """Wrap a parameter as a differentiable leaf."""
        var = Var(param.value, tape=self, requires_grad=True, param=param)
        self._watched.append(var)
        return var

    def constant(self, value: np.ndarray) -> Var:
        """Wrap data that never receives gradients (inputs, targets)."""
        return Var(np.asarray(value), tape=self, requires_grad=False)

    def record(self, out: Var, backward_fn: BackwardFn) -> Var:
        if self._consumed:
            raise usage_error("numerics", "tape already consumed by backward; start a new tape")
        out.tape = self
        out.requires_grad = True
        self._nodes.append((out, backward_fn))
        return out

    def backward(self, loss: Var, params: Optional[ParamStore] = None) -> None:
        """Propagate d(loss)/d(.) to every watched parameter.

        Failure Modes
        -------------
        - Nothing recorded, a second call on the same tape, or a loss that is
          not a scalar: usage error.
        """
        if not self._nodes or not loss.requires_grad:
            raise usage_error("numerics", "backward called before any recorded forward pass")
        if self._consumed:
            raise usage_error("numerics", "backward already ran on this tape")
        if loss.value.size != 1:
            raise usage_error("numerics", f"loss must be a scalar, got shape {loss.shape}", field="loss")
        loss.grad = np.ones_like(loss.value)
        for out, fn in reversed(self._nodes):
            if out.grad is not None:
                fn(out.grad)
        for var in self._watched:
            if var.grad is not None and var.param is not None:
                var.param.grad += var.grad
        self._consumed = True
        if params is not None:
            params.mark_grad_ready()


def leaf(param: Param, tape: Optional[Tape]) -> Var:
    """Return a watched Var on ``tape`` or an untracked Var when ``tape`` is None."""
    return tape.watch(param) if tape is not None else Var(param.value)


def constant(value: np.ndarray, tape: Optional[Tape]) -> Var:
    return tape.constant(value) if tape is not None else Var(np.asarray(value))


def backward(loss: Var, params: ParamStore) -> None:
    """Accumulate ``d(loss)/d(param)`` into every gradient buffer of ``params``.

    Gradient buffers are expected to have been zeroed (``params.zero_grad()``)
    before the forward pass of the batch.
    """
    if loss.tape is None:
        raise usage_error("numerics", "backward called on an untracked value (no forward pass recorded)")
    loss.tape.backward(loss, params)


__all__ = ["Var", "Tape", "leaf", "constant", "backward", "BackwardFn"]
