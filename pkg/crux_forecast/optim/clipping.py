"""Global gradient-norm clipping."""
from __future__ import annotations

from ..config import defaults as D
from ..numerics import ParamStore


def clip_grad_norm(params: ParamStore, max_norm: float = D.CLIP) -> float:
    """Rescale every gradient so the global L2 norm is at most ``max_norm``.

    Returns
    -------
    float
        The applied scale ``max_norm / g`` when the norm ``g`` exceeded
        ``max_norm``, else ``1.0``.
    """
    norm = params.grad_norm()
    if norm <= max_norm:
        return 1.0
    scale = max_norm / norm
    for p in params:
        p.grad *= scale
    return scale


__all__ = ["clip_grad_norm"]
