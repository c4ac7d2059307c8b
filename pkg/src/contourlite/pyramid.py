"""Laplacian pyramid analysis and synthesis.

The decomposition follows Burt and Adelson's construction: each level
stores the difference between the current image and an interpolated copy
of its blurred, 2x-downsampled version, then recurses on the lowpass.
Because synthesis adds back exactly what analysis subtracted, perfect
reconstruction holds for any choice of filters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.ndimage import convolve1d

from .imageio import PadRecord, as_grid

__all__ = [
    "LpFilter",
    "LpDecomposition",
    "blur",
    "downsample2",
    "upsample2_interp",
    "lp_analysis",
    "lp_synthesis",
]

# scipy extension modes: "mirror" is whole-sample symmetric extension,
# which keeps the zero interleave of upsampled signals on-lattice.
_SCIPY_MODE = {"symmetric": "mirror", "periodic": "wrap"}


@dataclass(frozen=True)
class LpFilter:
    """1-D lowpass kernel pair for the pyramid.

    ``taps`` is the analysis lowpass (odd length, DC gain 1).
    ``interp_taps`` is applied to zero-stuffed signals during upsampling
    and carries the x2 interpolation gain; both of its polyphases sum
    to 1 so constant images reproduce exactly.
    """

    name: str
    taps: np.ndarray
    interp_taps: np.ndarray

    @property
    def center_index(self):
        return (len(self.taps) - 1) // 2

    @property
    def dc_gain(self):
        return float(np.sum(self.taps))

    def __post_init__(self):
        taps = np.asarray(self.taps, dtype=np.float64)
        interp = np.asarray(self.interp_taps, dtype=np.float64)
        if taps.ndim != 1 or len(taps) % 2 == 0:
            raise ValueError("analysis taps must be a 1-D odd-length kernel")
        if interp.ndim != 1 or len(interp) % 2 == 0:
            raise ValueError("interpolation taps must be a 1-D odd-length kernel")
        if abs(taps.sum() - 1.0) > 1e-12:
            raise ValueError(f"analysis DC gain {taps.sum()} is not 1")
        object.__setattr__(self, "taps", taps)
        object.__setattr__(self, "interp_taps", interp)

    @classmethod
    def burt(cls, a=0.6):
        """Classic 5-tap Burt-Adelson kernel [1/4-a/2, 1/4, a, 1/4, 1/4-a/2]."""
        w = np.array([0.25 - a / 2, 0.25, a, 0.25, 0.25 - a / 2])
        return cls(name=f"burt{a:g}", taps=w, interp_taps=2.0 * w)

    @classmethod
    def biorthogonal_9_7(cls):
        """Cohen-Daubechies-Feauveau 9/7 pair, DC-normalised for the pyramid."""
        h = np.array(
            [
                0.026748757410810,
                -0.016864118442875,
                -0.078223266528990,
                0.266864118442875,
                0.602949018236360,
                0.266864118442875,
                -0.078223266528990,
                -0.016864118442875,
                0.026748757410810,
            ]
        )
        g = np.array(
            [
                -0.045635881557125,
                -0.028771763114250,
                0.295635881557125,
                0.557543526228500,
                0.295635881557125,
                -0.028771763114250,
                -0.045635881557125,
            ]
        )
        h = h / h.sum()
        g = g / g.sum()
        return cls(name="9-7", taps=h, interp_taps=2.0 * g)

    @classmethod
    def named(cls, name):
        if isinstance(name, cls):
            return name
        if name in ("burt", "burt0.6"):
            return cls.burt()
        if name in ("9-7", "9/7", "bior9.7"):
            return cls.biorthogonal_9_7()
        raise ValueError(f"unknown pyramid filter {name!r}")


@dataclass
class LpDecomposition:
    """One lowpass residual plus bandpass grids, index 0 = finest scale."""

    lowpass: np.ndarray
    bandpass: list
    levels: int
    pad: Optional[PadRecord] = field(default=None)

    def __post_init__(self):
        if self.levels != len(self.bandpass):
            raise ValueError("levels must equal the number of bandpass grids")
        h, w = self.bandpass[0].shape
        for k, band in enumerate(self.bandpass):
            if band.shape != (h >> k, w >> k):
                raise ValueError(f"bandpass[{k}] has shape {band.shape}, "
                                 f"expected {(h >> k, w >> k)}")
        if self.lowpass.shape != (h >> self.levels, w >> self.levels):
            raise ValueError("lowpass dims inconsistent with bandpass chain")

    @property
    def total_samples(self):
        return self.lowpass.size + sum(b.size for b in self.bandpass)


def blur(grid, filt: LpFilter, mode="symmetric"):
    """Separable lowpass filtering, rows then columns."""
    m = _SCIPY_MODE[mode]
    out = convolve1d(as_grid(grid), filt.taps, axis=0, mode=m)
    return convolve1d(out, filt.taps, axis=1, mode=m)


def downsample2(grid):
    """Keep even-indexed samples along both axes (phase 0)."""
    return np.asarray(grid)[0::2, 0::2]


def upsample2_interp(grid, filt: LpFilter, mode="symmetric"):
    """Zero-stuff by 2 in each axis and interpolate with the gain-2 kernel."""
    g = as_grid(grid)
    up = np.zeros((2 * g.shape[0], 2 * g.shape[1]))
    up[0::2, 0::2] = g
    m = _SCIPY_MODE[mode]
    up = convolve1d(up, filt.interp_taps, axis=0, mode=m)
    return convolve1d(up, filt.interp_taps, axis=1, mode=m)


def lp_analysis(grid, levels, filt="burt", mode="symmetric") -> LpDecomposition:
    """Decompose into ``levels`` bandpass grids plus a lowpass residual.

    Grid dims must be divisible by 2**levels (use pad_for_levels first).
    """
    g = as_grid(grid)
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    filt = LpFilter.named(filt)
    d = 2 ** levels
    if g.shape[0] % d or g.shape[1] % d:
        raise ValueError(f"dims {g.shape} not divisible by 2**{levels}")
    bands = []
    cur = g
    for _ in range(levels):
        low = downsample2(blur(cur, filt, mode))
        bands.append(cur - upsample2_interp(low, filt, mode))
        cur = low
    return LpDecomposition(lowpass=cur, bandpass=bands, levels=levels)


def lp_synthesis(dec: LpDecomposition, filt="burt", mode="symmetric"):
    """Exact inverse of :func:`lp_analysis` (same filter and mode)."""
    filt = LpFilter.named(filt)
    cur = dec.lowpass
    for band in reversed(dec.bandpass):
        up = upsample2_interp(cur, filt, mode)
        if up.shape != band.shape:
            raise ValueError(f"level dims mismatch: {up.shape} vs {band.shape}")
        cur = band + up
    return cur
