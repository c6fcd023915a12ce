"""Per-epoch training trace stored as JSON lines."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, List

from ..base.errors import ErrorCode, ForecastError


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    val_loss: float
    lr: float
    wall_seconds: float

    def to_dict(self) -> dict:
        return asdict(self)


def write_trace(path: str | Path, records: Iterable[EpochRecord]) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")
    return p


def read_trace(path: str | Path) -> List[EpochRecord]:
    """Load a trace written by :func:`write_trace`.

    Failure Modes
    -------------
    - Missing file: ``NOT_FOUND``; malformed line: ``LOAD`` naming the line.
    """
    p = Path(path)
    if not p.is_file():
        raise ForecastError(ErrorCode.NOT_FOUND, f"trace not found: {p}", "trainer", field=str(p))
    out: List[EpochRecord] = []
    with p.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                out.append(EpochRecord(**json.loads(line)))
            except (ValueError, TypeError) as exc:
                raise ForecastError(
                    ErrorCode.LOAD, f"{p.name} line {lineno}: {exc}", "trainer", field=f"line {lineno}", raw=exc
                ) from exc
    return out


__all__ = ["EpochRecord", "write_trace", "read_trace"]
