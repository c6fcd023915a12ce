"""crux_forecast: multi-scale MLP long-horizon forecaster with linear baselines.

Sub-packages
------------
- ``numerics``: dense-tensor ops with analytic reverse-mode gradients.
- ``data``: CSV ingest, 70/10/20 splits, z-scoring and window batches.
- ``models``: MSMixer, DLinear, NLinear, RevIN, parameter accounting.
- ``optim``: AdamW, gradient clipping, plateau scheduler, early stopping.
- ``trainer``: epoch loop, evaluation metrics and learned diagnostics.
- ``service``: run orchestration, benchmark grids, reports and the CLI.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
