"""RevIN, scale branch, gate and shortcut behaviour."""
from __future__ import annotations

import numpy as np
import pytest

from crux_forecast.base.errors import ErrorCode, ForecastError
from crux_forecast.models import DLinearShortcut, RevIN, ScaleBranch, ScaleGate, branch_forward, gate_merge, shortcut_forward
from crux_forecast.numerics import ParamStore, Rng, Var, ops


def _v(a) -> Var:
    return Var(np.asarray(a, dtype=np.float64))


# ---------------------------------------------------------------- RevIN
def test_revin_constant_window_maps_to_zero_and_back():
    store = ParamStore()
    revin = RevIN(store, 2, 1e-5)
    x = _v(np.full((4, 10), 3.5))
    z, stats = revin.normalize(x)
    np.testing.assert_allclose(z.value, 0.0, atol=1e-12)
    back = revin.denormalize(z, stats)
    np.testing.assert_allclose(back.value, 3.5, atol=1e-12)


def test_revin_standardized_window_and_mean_recovery():
    store = ParamStore()
    revin = RevIN(store, 1, 1e-5)
    z, stats = revin.normalize(_v([[-1.0, 1.0]]))
    np.testing.assert_allclose(z.value, [[-1.0, 1.0]], atol=1e-4)
    back = revin.denormalize(_v(np.zeros((1, 3))), stats)
    np.testing.assert_allclose(back.value, 0.0, atol=1e-12)  # mu of [-1, 1]


def test_revin_round_trip_with_affine():
    rng = np.random.default_rng(0)
    store = ParamStore()
    revin = RevIN(store, 3, 1e-5)
    revin.gamma.value[...] = [0.5, 2.0, -1.5]
    revin.beta.value[...] = [0.1, -0.3, 0.7]
    x = rng.normal(3.0, 4.0, size=(12, 50))
    z, stats = revin.normalize(_v(x))
    np.testing.assert_allclose(revin.denormalize(z, stats).value, x, atol=1e-5)


def test_revin_stats_consumed_once():
    store = ParamStore()
    revin = RevIN(store, 1, 1e-5)
    z, stats = revin.normalize(_v([[1.0, 2.0, 4.0]]))
    revin.denormalize(z, stats)
    with pytest.raises(ForecastError) as ei:
        revin.denormalize(z, stats)
    assert ei.value.code is ErrorCode.USAGE  # nosec B101
    with pytest.raises(ForecastError):
        revin.denormalize(z, None)


def test_revin_init_values():
    store = ParamStore()
    revin = RevIN(store, 7, 1e-5)
    np.testing.assert_array_equal(revin.gamma.value, np.ones(7))
    np.testing.assert_array_equal(revin.beta.value, np.zeros(7))
    assert revin.param_count == 14  # nosec B101


# ---------------------------------------------------------------- branch
def _branch(scale=4, lookback=16, hidden=3, horizon=4, seed=0):
    store = ParamStore()
    return store, ScaleBranch(store, scale, lookback, hidden, horizon, 0.0, Rng(seed), init_std=0.5)


def test_branch_zero_network_and_bias_passthrough():
    store, br = _branch()
    for p in store:
        p.value[...] = 0.0
    pooled = _v(np.random.default_rng(1).normal(size=(5, 4)))
    np.testing.assert_array_equal(branch_forward(pooled, br).value, 0.0)
    br.b2.value[...] = [1.0, 2.0, 3.0, 4.0]
    br.b1.value[...] = 0.7
    out = branch_forward(pooled, br).value
    np.testing.assert_array_equal(out, np.tile([1.0, 2.0, 3.0, 4.0], (5, 1)))


def test_branch_matches_composed_reference():
    from scipy.special import ndtr

    _, br = _branch(seed=3)
    x = np.random.default_rng(2).normal(size=(6, 16))
    pooled = x.reshape(6, 4, 4).mean(axis=2)
    h = pooled @ br.w1.value.T + br.b1.value
    ref = (h * ndtr(h)) @ br.w2.value.T + br.b2.value
    np.testing.assert_allclose(br.forward(_v(x)).value, ref, rtol=0, atol=1e-12)


def test_branch_rejects_width_mismatch_and_bad_scale():
    _, br = _branch()
    with pytest.raises(ForecastError):
        branch_forward(_v(np.zeros((2, 5))), br)
    with pytest.raises(ForecastError):
        ScaleBranch(ParamStore(), 5, 16, 3, 4, 0.0, Rng(0), 0.02)


# ------------------------------------------------------------------ gate
def test_gate_uniform_and_saturated():
    store = ParamStore()
    gate = ScaleGate(store, (1, 4, 16))
    rng = np.random.default_rng(0)
    a, b, c = (_v(rng.normal(size=(3, 4))) for _ in range(3))
    np.testing.assert_allclose(gate_merge([a, a, a], gate).value, a.value, atol=1e-15)
    np.testing.assert_allclose(gate_merge([a, b, c], gate).value, (a.value + b.value + c.value) / 3, atol=1e-12)
    gate.logits.value[...] = [50.0, 0.0, 0.0]
    np.testing.assert_allclose(gate_merge([a, b, c], gate).value, a.value, atol=1e-12)
    assert abs(sum(gate.weights_by_scale().values()) - 1.0) < 1e-12  # nosec B101


# -------------------------------------------------------------- shortcut
def _shortcut(blend=True, lookback=12, horizon=3, kernel=5):
    store = ParamStore()
    return DLinearShortcut(store, lookback, horizon, kernel, Rng(4), init_std=0.3, blend=blend)


def test_shortcut_equal_paths():
    sc = _shortcut()
    w = np.random.default_rng(5).normal(size=(3, 12))
    sc.w_t.value[...] = w
    sc.w_s.value[...] = w
    sc.b_t.value[...] = 0.25
    sc.b_s.value[...] = 0.25
    x = np.random.default_rng(6).normal(size=(4, 12))
    # sigmoid(0) = 0.5 weighs each of the equal projections by one half
    np.testing.assert_allclose(shortcut_forward(_v(x), sc).value, 0.5 * (x @ w.T) + 0.25, atol=1e-12)
    plain = _shortcut(blend=False)
    plain.w_t.value[...] = w
    plain.w_s.value[...] = w
    plain.b_t.value[...] = 0.25
    plain.b_s.value[...] = 0.0
    np.testing.assert_allclose(shortcut_forward(_v(x), plain).value, x @ w.T + 0.25, atol=1e-12)


def test_shortcut_saturated_blend_uses_trend_only():
    sc = _shortcut()
    sc.blend_logit.value[...] = 50.0
    x = _v(np.random.default_rng(7).normal(size=(2, 12)))
    trend = ops.moving_average(x, 5).value
    expected = trend @ sc.w_t.value.T + sc.b_t.value
    np.testing.assert_allclose(sc.forward(x).value, expected, atol=1e-12)


def test_shortcut_matches_composed_reference():
    sc = _shortcut()
    sc.blend_logit.value[...] = 0.3
    x = np.random.default_rng(8).normal(size=(3, 12))
    padded = np.concatenate([np.repeat(x[:, :1], 2, axis=1), x, np.repeat(x[:, -1:], 2, axis=1)], axis=1)
    trend = np.stack([padded[:, t : t + 5].mean(axis=1) for t in range(12)], axis=1)
    seasonal = x - trend
    p = 1.0 / (1.0 + np.exp(-0.3))
    ref = p * (trend @ sc.w_t.value.T + sc.b_t.value) + (1 - p) * (seasonal @ sc.w_s.value.T + sc.b_s.value)
    np.testing.assert_allclose(sc.forward(_v(x)).value, ref, rtol=0, atol=1e-12)


def test_shortcut_sees_detail_lost_by_pooling():
    sc = _shortcut(lookback=16, horizon=4)
    x = np.random.default_rng(9).normal(size=(1, 16))
    delta = np.zeros((1, 16))
    delta[0, 4:8] = [0.3, -0.3, 0.3, -0.3]
    x2 = x + delta
    np.testing.assert_allclose(ops.avg_pool(_v(x), 4).value, ops.avg_pool(_v(x2), 4).value, atol=1e-15)
    assert not np.allclose(sc.forward(_v(x)).value, sc.forward(_v(x2)).value)  # nosec B101
