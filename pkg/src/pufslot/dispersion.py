"""Seed sensitivity of PRBS signatures: sweeps and moving-window spread."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .hardware import estimate_cost
from .prbs import FeedbackPolynomial, registry_polynomial, signature_table

DEFAULT_WINDOW = 16
# Reported spread of PRBS9 outputs over consecutive seeds in the published
# study; the statistic behind it is unknown, so it is only printed alongside.
PRBS9_REFERENCE_STD = 91.38


@dataclass(frozen=True)
class SeedSweep:
    order: int
    outputs: np.ndarray  # outputs[s] is the signature for seed s

    def __post_init__(self):
        if len(self.outputs) != 1 << self.order:
            raise ValueError(f"sweep must have {1 << self.order} entries, got {len(self.outputs)}")


@dataclass(frozen=True)
class WindowStats:
    window_size: int
    per_window_std: np.ndarray
    min_std: float


@dataclass(frozen=True)
class OrderRow:
    order: int
    window: int
    min_std: float
    area_scale: float
    power_scale: float


def sweep_outputs(poly: FeedbackPolynomial) -> SeedSweep:
    return SeedSweep(poly.order, signature_table(poly))


def windowed_std(sweep: SeedSweep, window_size: int) -> WindowStats:
    """Population std of outputs over every run of ``window_size`` consecutive seeds."""
    n = len(sweep.outputs)
    if not 1 <= window_size <= n:
        raise ValueError(f"window_size must be in [1, {n}], got {window_size}")
    stds = _kernels.window_std(np.asarray(sweep.outputs, dtype=np.int64), window_size)
    return WindowStats(window_size, stds, float(stds.min()))


def consecutive_seed_std(poly: FeedbackPolynomial, window_size: int = DEFAULT_WINDOW) -> float:
    """Smallest windowed spread over consecutive seeds.

    For PRBS9 compare against ``PRBS9_REFERENCE_STD``; equality is not
    expected, only a comparable magnitude.
    """
    return windowed_std(sweep_outputs(poly), window_size).min_std


def compare_orders(orders, window_size: int = DEFAULT_WINDOW) -> list[OrderRow]:
    rows = []
    for order in orders:
        poly = registry_polynomial(order)
        cost = estimate_cost(order)
        stats = windowed_std(sweep_outputs(poly), window_size)
        rows.append(OrderRow(order, window_size, stats.min_std, cost.area_scale, cost.power_scale))
    return rows
