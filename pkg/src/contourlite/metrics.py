"""Mean squared error and peak signal-to-noise ratio (peak fixed at 255)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imageio import as_grid

PEAK = 255.0

__all__ = ["QualityScore", "mse", "psnr"]


@dataclass(frozen=True)
class QualityScore:
    mse: float
    psnr_db: float  # math.inf when mse == 0

    @property
    def is_infinite(self):
        return math.isinf(self.psnr_db)


def mse(a, b) -> float:
    """Mean of squared elementwise differences, full floating precision."""
    ga, gb = as_grid(a), as_grid(b)
    if ga.shape != gb.shape:
        raise ValueError(f"shape mismatch: {ga.shape} vs {gb.shape}")
    d = ga - gb
    return float(np.mean(d * d))


def psnr(a, b, quantize_first=False) -> QualityScore:
    """10 log10(255^2 / MSE); identical grids score infinite.

    By default the comparison runs at full float precision.  With
    ``quantize_first`` both grids are clamped to [0, 255] and rounded
    first, scoring what the saved 8-bit files would.
    """
    if quantize_first:
        from .imageio import quantize

        a, b = quantize(a), quantize(b)
    err = mse(a, b)
    if err == 0.0:
        return QualityScore(mse=0.0, psnr_db=math.inf)
    return QualityScore(mse=err, psnr_db=10.0 * math.log10(PEAK * PEAK / err))
