"""Epoch loop, validation and evaluation.

``train`` runs, per epoch: one shuffled pass over every train window
(forward, MSE, backward, global-norm clip, AdamW), then the validation MSE in
eval mode, the early-stopping check and the plateau scheduler. When the loop
ends the parameters of the best validation epoch are restored.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..base.errors import ErrorCode, ForecastError
from ..base.logging import LogContext, get_logger, log_event, normalized_log_event
from ..config import defaults as D
from ..data import IndexRange, WindowedDataset, sample_windows, window_count
from ..models.interfaces import ForecastModel
from ..numerics import Rng, Tape, backward, ops
from ..optim import AdamW, EarlyStopper, PlateauScheduler, StopDecision, clip_grad_norm
from .metrics import Metrics, error_sums
from .train_config import TrainConfig
from .trace import EpochRecord


@dataclass(frozen=True)
class TrainResult:
    """Outcome of :func:`train`; the model itself is updated in place."""

    trace: Tuple[EpochRecord, ...]
    best_epoch: int
    best_val_loss: float
    stopped_early: bool
    wall_seconds: float

    @property
    def epochs_run(self) -> int:
        return len(self.trace)


def evaluate(
    model: ForecastModel,
    ds: WindowedDataset,
    rng_range: IndexRange | str = "test",
    batch_size: int = D.BATCH_SIZE,
    cross_border: bool = D.CROSS_BORDER_CONTEXT,
) -> Metrics:
    """Score ``model`` over every window of ``rng_range`` in eval mode.

    MSE and MAE average over all (window, step, variate) cells in z-scored
    space. Nothing is recorded and dropout is off, so repeated calls agree.

    Failure Modes
    -------------
    - Range without a single window: configuration error.
    """
    sq = ab = 0.0
    cells = 0
    for batch in sample_windows(ds, rng_range, batch_size=batch_size, cross_border=cross_border):
        pred = model.forward(batch.x, tape=None, training=False)
        s, a, n = error_sums(pred.value, batch.y)
        sq += s
        ab += a
        cells += n
    return Metrics.from_sums(sq, ab, cells)


def _divergence(epoch: int, batch_index: int, lr: float, value: float) -> ForecastError:
    return ForecastError(
        ErrorCode.DIVERGENCE,
        f"non-finite training loss {value} at epoch {epoch}, batch {batch_index} (lr={lr:g})",
        "trainer",
        field="loss",
    )


def train(
    model: ForecastModel,
    ds: WindowedDataset,
    cfg: TrainConfig,
    rng: Optional[Rng] = None,
    ctx: Optional[LogContext] = None,
    logger: Optional[logging.Logger] = None,
) -> TrainResult:
    """Fit ``model`` on the train range of ``ds``.

    Parameters
    ----------
    model: ForecastModel
        Freshly built (or partially trained) model; updated in place.
    ds: WindowedDataset
        Z-scored dataset whose split geometry matches the model.
    cfg: TrainConfig
        Optimization settings.
    rng: Optional[Rng]
        Drives batch shuffling and dropout masks; defaults to ``Rng(cfg.seed)``.
    ctx, logger:
        Structured logging context and target.

    Returns
    -------
    TrainResult
        Per-epoch trace and the best validation epoch (restored into the model).

    Failure Modes
    -------------
    - Non-finite training loss: ``DIVERGENCE`` naming epoch, batch and lr.
    - Train or val range too short for one window: configuration error.
    """
    log = logger or get_logger()
    rng = rng or Rng(cfg.seed)
    params = model.params
    opt = AdamW(params, lr=cfg.lr, weight_decay=cfg.weight_decay)
    sched = PlateauScheduler(lr=cfg.lr, factor=cfg.plateau_factor, patience=cfg.plateau_patience)
    stopper = EarlyStopper(patience=cfg.patience)
    records: list[EpochRecord] = []
    stopped = False
    started = time.perf_counter()
    log_event(
        log,
        "train.start",
        ctx,
        params=params.total(),
        train_windows=window_count(ds.split.train, ds.split.lookback, ds.split.horizon, cfg.cross_border),
        max_epochs=cfg.max_epochs,
    )

    for epoch in range(1, cfg.max_epochs + 1):
        epoch_start = time.perf_counter()
        lr = opt.lr
        loss_sum = 0.0
        rows = 0
        batches = sample_windows(
            ds, "train", shuffle=True, rng=rng, batch_size=cfg.batch_size, cross_border=cfg.cross_border
        )
        for bi, batch in enumerate(batches):
            params.zero_grad()
            tape = Tape()
            pred = model.forward(batch.x, tape, training=True, rng=rng)
            loss = ops.mse(pred, tape.constant(batch.y))
            value = float(loss.value[0])
            if not np.isfinite(value):
                err = _divergence(epoch, bi, lr, value)
                normalized_log_event(log, "train.error", ctx, phase="train", epoch=epoch, lr=lr,
                                     error_code=err.code.value, batch=bi, message=err.message)
                raise err
            backward(loss, params)
            clip_grad_norm(params, cfg.clip)
            opt.step()
            loss_sum += value * batch.x.shape[0]
            rows += batch.x.shape[0]

        val_loss = evaluate(model, ds, "val", cfg.batch_size, cfg.cross_border).mse
        decision = stopper.check(val_loss, params, epoch)
        new_lr = sched.step(val_loss)
        if new_lr < lr:
            opt.lr = new_lr
            normalized_log_event(log, "train.lr_reduced", ctx, phase="train", epoch=epoch, lr=new_lr, previous_lr=lr)
        rec = EpochRecord(
            epoch=epoch,
            train_loss=loss_sum / rows,
            val_loss=val_loss,
            lr=lr,
            wall_seconds=time.perf_counter() - epoch_start,
        )
        records.append(rec)
        normalized_log_event(
            log, "train.epoch", ctx, phase="train", epoch=epoch, lr=lr,
            train_loss=rec.train_loss, val_loss=val_loss, wall_seconds=round(rec.wall_seconds, 4),
        )
        if decision is StopDecision.STOP:
            stopped = True
            normalized_log_event(log, "train.early_stop", ctx, phase="train", epoch=epoch, lr=opt.lr,
                                 best_epoch=stopper.best_epoch, best_val_loss=stopper.best)
            break

    stopper.restore_best(params)
    result = TrainResult(
        trace=tuple(records),
        best_epoch=int(stopper.best_epoch or 0),
        best_val_loss=stopper.best,
        stopped_early=stopped,
        wall_seconds=time.perf_counter() - started,
    )
    normalized_log_event(
        log, "train.finalize", ctx, phase="finalize", epoch=result.epochs_run, lr=opt.lr,
        best_epoch=result.best_epoch, best_val_loss=result.best_val_loss, stopped_early=stopped,
    )
    return result


__all__ = ["TrainResult", "train", "evaluate"]
