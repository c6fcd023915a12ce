from __future__ import annotations

import numpy as np
import pytest

from crux_forecast.base.errors import ErrorCode, ForecastError
from crux_forecast.numerics import ParamStore, Tape, backward, constant, leaf, ops
from crux_forecast.optim import AdamW, AdamWState, adamw_step, clip_grad_norm


def _store_with_grads(**grads) -> ParamStore:
    store = ParamStore()
    for name, g in grads.items():
        p = store.add(name, np.shape(g), "ones")
        p.grad[...] = g
    store.mark_grad_ready()
    return store


def test_clip_three_four_five():
    store = _store_with_grads(w=[3.0, 4.0])
    assert clip_grad_norm(store, 1.0) == pytest.approx(0.2)  # nosec B101
    np.testing.assert_allclose(store["w"].grad, [0.6, 0.8])


def test_clip_under_threshold_is_noop():
    store = _store_with_grads(w=[0.3, 0.4])
    assert clip_grad_norm(store, 1.0) == 1.0  # nosec B101
    np.testing.assert_array_equal(store["w"].grad, [0.3, 0.4])


def test_clip_uses_global_norm_across_tensors():
    store = _store_with_grads(a=[3.0, 0.0], b=[0.0, 4.0])
    assert clip_grad_norm(store) == pytest.approx(0.2)  # nosec B101
    np.testing.assert_allclose(store["a"].grad, [0.6, 0.0])
    np.testing.assert_allclose(store["b"].grad, [0.0, 0.8])
    assert store.grad_norm() <= 1.0 + 1e-9  # nosec B101


def test_adamw_first_step_hand_value():
    store = _store_with_grads(theta=[1.0])
    opt = AdamW(store, lr=1e-3, weight_decay=0.0)
    opt.step()
    # bias-corrected m_hat / sqrt(v_hat) = 1 up to eps
    assert store["theta"].value[0] == pytest.approx(1.0 - 1e-3, abs=1e-10)  # nosec B101
    assert opt.state.step_count == 1  # nosec B101


def test_adamw_zero_gradient_without_decay_keeps_value():
    store = _store_with_grads(theta=[2.5])
    adamw_step(store, AdamWState(lr=1e-3, weight_decay=0.0))
    assert store["theta"].value[0] == 2.5  # nosec B101


def test_adamw_pure_decay_shrinks_exactly():
    store = _store_with_grads(theta=[2.0, -4.0])
    adamw_step(store, AdamWState(lr=1e-3, weight_decay=1e-4))
    np.testing.assert_array_equal(store["theta"].value, np.array([2.0, -4.0]) * (1 - 1e-3 * 1e-4))


def test_adamw_requires_backward_first():
    store = ParamStore()
    store.add("w", (2,), "ones")
    with pytest.raises(ForecastError) as ei:
        AdamW(store).step()
    assert ei.value.code is ErrorCode.USAGE  # nosec B101


def test_adamw_decreases_convex_quadratic():
    store = ParamStore()
    store.add("w", (1, 3), "ones")
    x = np.eye(3)
    y = np.array([[0.5], [-1.0], [2.0]])
    opt = AdamW(store, lr=1e-3, weight_decay=0.0)

    def quad(tape):
        return ops.mse(ops.linear(constant(x, tape), leaf(store["w"], tape)), constant(y, tape))

    start = float(quad(None).value[0])
    for _ in range(100):
        store.zero_grad()
        tape = Tape()
        backward(quad(tape), store)
        opt.step()
    assert float(quad(None).value[0]) < start  # nosec B101
