"""Forecasting CLI (package entrypoint).

Wires argument parsing to the handlers in ``cli_actions``; no run logic lives
here.
"""
from __future__ import annotations

import sys
from typing import Callable, Dict, Optional

from .cli_actions import handle_ablate, handle_benchmark, handle_report, handle_sensitivity, handle_train
from .cli_parser import build_parser

_HANDLERS: Dict[str, Callable[..., int]] = {
    "train": handle_train,
    "benchmark": handle_benchmark,
    "ablate": handle_ablate,
    "sensitivity": handle_sensitivity,
    "report": handle_report,
}


def main(argv: Optional[list[str]] = None) -> int:
    """CLI entrypoint.

    Parameters
    ----------
    argv: Optional[list[str]]
        Argument vector; when ``None`` uses ``sys.argv[1:]``.

    Returns
    -------
    int
        Process exit code (0 only when every requested run succeeded).
    """
    p = build_parser()
    args = p.parse_args(list(sys.argv[1:] if argv is None else argv))
    handler = _HANDLERS.get(args.cmd or "")
    if handler is None:
        p.print_usage(sys.stderr)
        return 2
    return handler(args)


__all__ = ["main"]


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
