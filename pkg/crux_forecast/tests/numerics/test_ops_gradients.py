"""Analytic vs finite-difference gradients for every op."""
from __future__ import annotations

from typing import Callable, Optional

import numpy as np
import pytest

from crux_forecast.base.errors import ErrorCode, ForecastError
from crux_forecast.numerics import ParamStore, Rng, Tape, Var, backward, constant, leaf
from crux_forecast.numerics import ops
from crux_forecast.numerics.gradcheck import check_gradients

TOL = 1e-4


def _store(shapes: dict[str, tuple[int, ...]], seed: int = 0, std: float = 0.7) -> ParamStore:
    store = ParamStore()
    rng = Rng(seed)
    for name, shape in shapes.items():
        store.add(name, shape, "normal", rng, std=std)
    return store


def _assert_grads(loss_fn: Callable[[Optional[Tape]], Var], store: ParamStore) -> None:
    results = check_gradients(loss_fn, store)
    for name, res in results.items():
        assert res.rel_error < TOL, f"{name}: rel error {res.rel_error:.2e}"  # nosec B101


def _target(shape, seed=99):
    return np.random.default_rng(seed).normal(size=shape)


def test_scalar_chain_rule_hand_value():
    store = ParamStore()
    store.add("w", (1, 1), "ones")
    store["w"].value[...] = 0.5
    x, y = np.array([[2.0]]), np.array([[3.0]])
    tape = Tape()
    loss = ops.mse(ops.linear(tape.constant(x), tape.watch(store["w"])), tape.constant(y))
    backward(loss, store)
    # d/dw (wx - y)^2 = 2 (wx - y) x
    assert store["w"].grad[0, 0] == pytest.approx(2 * (0.5 * 2.0 - 3.0) * 2.0)  # nosec B101
    assert store.grad_ready  # nosec B101


def test_linear_gelu_grads():
    store = _store({"x": (3, 5), "w": (4, 5), "b": (4,)})
    y = _target((3, 4))

    def loss_fn(tape):
        h = ops.linear(leaf(store["x"], tape), leaf(store["w"], tape), leaf(store["b"], tape))
        return ops.mse(ops.gelu(h), constant(y, tape))

    _assert_grads(loss_fn, store)


def test_pool_and_moving_average_grads():
    store = _store({"x": (2, 12)})
    y = _target((2, 3))
    y2 = _target((2, 12), seed=5)

    def loss_fn(tape):
        x = leaf(store["x"], tape)
        pooled = ops.avg_pool(x, 4)
        trend, seasonal = ops.decompose(x, 5)
        mixed = ops.add(ops.gelu(trend), seasonal)
        return ops.add(ops.mse(pooled, constant(y, tape)), ops.mse(mixed, constant(y2, tape)))

    _assert_grads(loss_fn, store)


def test_gate_and_blend_grads():
    store = _store({"a": (2, 3), "b": (2, 3), "c": (2, 3), "logits": (3,), "blend": (1,)})
    y = _target((2, 3))

    def loss_fn(tape):
        a, b, c = (leaf(store[n], tape) for n in ("a", "b", "c"))
        merged = ops.gate_merge([a, b, c], leaf(store["logits"], tape))
        out = ops.sigmoid_blend(leaf(store["blend"], tape), merged, ops.gelu(c))
        return ops.mse(out, constant(y, tape))

    _assert_grads(loss_fn, store)


def test_row_affine_and_inverse_grads():
    store = _store({"z": (6, 4), "gamma": (3,), "beta": (3,)})
    store["gamma"].value[...] = np.abs(store["gamma"].value) + 1.0
    y = _target((6, 4))

    def loss_fn(tape):
        g = ops.tile_rows(leaf(store["gamma"], tape), 2)
        b = ops.tile_rows(leaf(store["beta"], tape), 2)
        fwd = ops.row_affine(leaf(store["z"], tape), g, b)
        inv = ops.row_affine_inverse(ops.gelu(fwd), g, b, guard=1e-10)
        return ops.mse(ops.affine_const(inv, 0.5, 1.0), constant(y, tape))

    _assert_grads(loss_fn, store)


def test_dropout_grad_uses_same_mask():
    store = _store({"x": (4, 6)})
    tape = Tape()
    out = ops.dropout(leaf(store["x"], tape), 0.5, training=True, rng=Rng(1))
    loss = ops.mse(out, tape.constant(np.zeros((4, 6))))
    backward(loss, store)
    mask = np.where(out.value == 0.0, 0.0, 2.0)
    expected = 2.0 * out.value / out.value.size * mask
    np.testing.assert_allclose(store["x"].grad, expected, atol=1e-14)


def test_gate_logit_grad_sums_to_zero_for_identical_branches():
    store = _store({"a": (2, 3), "logits": (3,)})
    y = _target((2, 3))
    tape = Tape()
    a = tape.watch(store["a"])
    merged = ops.gate_merge([a, a, a], tape.watch(store["logits"]))
    backward(ops.mse(merged, tape.constant(y)), store)
    assert abs(store["logits"].grad.sum()) < 1e-12  # nosec B101


def test_backward_before_forward_is_usage_error():
    store = _store({"w": (1, 1)})
    with pytest.raises(ForecastError) as ei:
        backward(Var(np.array([1.0])), store)
    assert ei.value.code is ErrorCode.USAGE  # nosec B101
    tape = Tape()
    with pytest.raises(ForecastError):
        tape.backward(tape.constant(np.array([1.0])), store)


def test_backward_twice_on_same_tape_is_usage_error():
    store = _store({"w": (1, 2)})
    tape = Tape()
    loss = ops.mse(ops.linear(tape.constant(np.ones((1, 2))), tape.watch(store["w"])), tape.constant(np.zeros((1, 1))))
    backward(loss, store)
    with pytest.raises(ForecastError):
        backward(loss, store)


def test_zero_grad_clears_buffers_and_flag():
    store = _store({"w": (1, 2)})
    tape = Tape()
    loss = ops.mse(ops.linear(tape.constant(np.ones((1, 2))), tape.watch(store["w"])), tape.constant(np.zeros((1, 1))))
    backward(loss, store)
    store.zero_grad()
    assert not store.grad_ready  # nosec B101
    assert all(not p.grad.any() for p in store)  # nosec B101
