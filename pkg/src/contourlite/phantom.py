"""Deterministic piecewise-smooth test phantom.

A synthetic stand-in for the smooth-plus-edges structure of anatomical
images: a soft background ramp, nested ellipses at distinct intensity
plateaus, an oblique bar, and a small high-contrast disk grid.  Pixel
values stay inside [16, 240].  The image is a pure function of its size,
so every build reproduces it bit for bit.
"""

from __future__ import annotations

import numpy as np

__all__ = ["make_phantom"]


def _ellipse(m, n, cy, cx, ry, rx, angle=0.0):
    dy = m - cy
    dx = n - cx
    if angle:
        ca, sa = np.cos(angle), np.sin(angle)
        dy, dx = ca * dy + sa * dx, -sa * dy + ca * dx
    return (dy / ry) ** 2 + (dx / rx) ** 2 <= 1.0


def make_phantom(size=256):
    """Build the standard piecewise-smooth phantom at the given size."""
    if size < 32:
        raise ValueError("phantom size must be >= 32")
    s = float(size)
    m, n = np.indices((size, size), dtype=np.float64)

    img = 40.0 + 30.0 * (n / s) + 20.0 * (m / s)

    body = _ellipse(m, n, 0.52 * s, 0.50 * s, 0.38 * s, 0.30 * s)
    img[body] = 150.0 - 25.0 * ((m[body] - 0.52 * s) / (0.38 * s)) ** 2

    inner = _ellipse(m, n, 0.46 * s, 0.46 * s, 0.17 * s, 0.11 * s,
                     angle=0.35)
    img[inner] = 95.0

    core = _ellipse(m, n, 0.46 * s, 0.46 * s, 0.07 * s, 0.045 * s,
                    angle=0.35)
    img[core] = 210.0

    lobe = _ellipse(m, n, 0.60 * s, 0.62 * s, 0.10 * s, 0.14 * s,
                    angle=-0.5)
    img[lobe] = 60.0

    # oblique bar, edge normal (2, 1)
    bar = (np.abs(2.0 * m + n - 1.1 * s) <= 0.035 * s) & \
          (n >= 0.08 * s) & (n <= 0.92 * s)
    img[bar] = 225.0

    # small bright disk grid in the lower right corner
    for i, cy in enumerate((0.82, 0.90)):
        for j, cx in enumerate((0.72, 0.80, 0.88)):
            r = 0.018 * s * (1.0 + 0.4 * ((i + j) % 2))
            img[_ellipse(m, n, cy * s, cx * s, r, r)] = 232.0

    dark = _ellipse(m, n, 0.30 * s, 0.68 * s, 0.06 * s, 0.09 * s, angle=0.9)
    img[dark] = 24.0

    return np.clip(img, 16.0, 240.0)
