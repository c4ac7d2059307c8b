"""The contourlet transform: Laplacian pyramid + directional filter banks.

``forward`` pads the input internally, runs the pyramid, then splits each
bandpass level into its configured number of directional subbands.
``inverse`` is exact up to floating-point error.  The fixed coefficient
traversal order (finest level first, subbands in tree-index order,
row-major within a subband, lowpass last) is shared by the noise
estimator, the serialised dump format, and the report accounting.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from . import dfb, pyramid
from .imageio import PadRecord, as_grid, crop_to_record, pad_to_multiple

__all__ = [
    "ContourletConfig",
    "ContourletCoeffs",
    "forward",
    "inverse",
    "map_coefficients",
    "save_coeffs",
    "load_coeffs",
]


@dataclass(frozen=True)
class ContourletConfig:
    """Transform schedule: pyramid depth and one DFB order per level.

    ``orders[0]`` applies to the finest bandpass level.  The default
    (3 levels, orders 3/2/2) gives 8 directions at the finest scale and
    4 at the two coarser scales.
    """

    levels: int = 3
    orders: tuple = (3, 2, 2)
    lp_filter: str = "burt"
    fan_filters: str = "fan8"
    extension: str = "symmetric"

    def __post_init__(self):
        if self.levels < 1:
            raise ValueError(f"levels must be >= 1, got {self.levels}")
        orders = tuple(int(o) for o in self.orders)
        if len(orders) != self.levels:
            raise ValueError(
                f"need one DFB order per level: {len(orders)} != {self.levels}")
        if any(not 0 <= o <= dfb.MAX_ORDER for o in orders):
            raise ValueError(f"orders must be in 0..{dfb.MAX_ORDER}: {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def pad_multiple(self):
        need = 2 ** self.levels
        for k, order in enumerate(self.orders):
            need = max(need, 2 ** k * dfb.dfb_required_divisor(order))
        return need

    def digest(self):
        ords = ",".join(str(o) for o in self.orders)
        return (f"L{self.levels};O{ords};{self.lp_filter};"
                f"{self.fan_filters};{self.extension}")


@dataclass
class ContourletCoeffs:
    """Lowpass grid plus per-level directional subband sets, finest first."""

    lowpass: np.ndarray
    directional: list  # [DirectionalSubbands, ...] index 0 = finest
    config: ContourletConfig
    pad: PadRecord

    def __post_init__(self):
        cfg = self.config
        if len(self.directional) != cfg.levels:
            raise ValueError("directional level count does not match config")
        ph, pw = self.pad.padded_height, self.pad.padded_width
        total = self.lowpass.size
        for k, sub in enumerate(self.directional):
            if sub.order != cfg.orders[k]:
                raise ValueError(f"level {k} order {sub.order} != "
                                 f"configured {cfg.orders[k]}")
            exp = (pw >> k, ph >> k)
            if sub.source_dims != exp:
                raise ValueError(f"level {k} source dims {sub.source_dims}, "
                                 f"expected {exp}")
            total += sub.total_samples
        # LP redundancy: sum over levels of 4^-k plus the lowpass, < 4/3
        if total > (ph * pw * 4) // 3 + 4:
            raise ValueError(f"coefficient count {total} exceeds LP redundancy")

    @property
    def total_coefficients(self):
        return self.lowpass.size + sum(s.total_samples
                                       for s in self.directional)

    def iter_directional(self):
        """Yield (level, subband_index, grid) in the fixed traversal order."""
        for level, sub in enumerate(self.directional):
            for k, band in enumerate(sub.subbands):
                yield level, k, band

    def finest_level_values(self):
        """All finest-level directional coefficients in traversal order."""
        parts = [b.ravel() for b in self.directional[0].subbands]
        return np.concatenate(parts) if parts else np.array([])


def forward(grid, config: ContourletConfig = None) -> ContourletCoeffs:
    """Contourlet analysis; pads internally to the config's multiple."""
    cfg = config or ContourletConfig()
    g = as_grid(grid)
    padded, rec = pad_to_multiple(g, cfg.pad_multiple, mode=cfg.extension)
    dec = pyramid.lp_analysis(padded, cfg.levels, cfg.lp_filter,
                              mode=cfg.extension)
    directional = [
        dfb.dfb_analysis(band, cfg.orders[k], cfg.fan_filters)
        for k, band in enumerate(dec.bandpass)
    ]
    return ContourletCoeffs(lowpass=dec.lowpass, directional=directional,
                            config=cfg, pad=rec)


def inverse(coeffs: ContourletCoeffs):
    """Exact inverse of :func:`forward` (crops the internal padding)."""
    cfg = coeffs.config
    bands = [dfb.dfb_synthesis(sub, cfg.fan_filters)
             for sub in coeffs.directional]
    dec = pyramid.LpDecomposition(lowpass=coeffs.lowpass, bandpass=bands,
                                  levels=cfg.levels)
    padded = pyramid.lp_synthesis(dec, cfg.lp_filter, mode=cfg.extension)
    return crop_to_record(padded, coeffs.pad)


def _apply_pointwise(f, arr):
    try:
        res = np.asarray(f(arr), dtype=np.float64)
    except Exception:
        res = None
    if res is not None and res.shape == arr.shape:
        return res
    if res is not None and res.ndim == 0:
        return np.full(arr.shape, float(res))
    return np.vectorize(f, otypes=[np.float64])(arr)


def map_coefficients(coeffs: ContourletCoeffs, f,
                     include_lowpass=False) -> ContourletCoeffs:
    """Apply a pointwise real function to every directional coefficient
    (and to the lowpass iff ``include_lowpass``); structure is unchanged.
    """
    directional = [
        dfb.DirectionalSubbands(
            order=sub.order,
            subbands=[_apply_pointwise(f, b) for b in sub.subbands],
            source_dims=sub.source_dims,
        )
        for sub in coeffs.directional
    ]
    low = (_apply_pointwise(f, coeffs.lowpass) if include_lowpass
           else coeffs.lowpass.copy())
    return ContourletCoeffs(lowpass=low, directional=directional,
                            config=coeffs.config, pad=coeffs.pad)


# --------------------------------------------------------- binary dump
#
# Layout (all little-endian):
#   magic  b"CTLC", version u16 = 1
#   levels u16, orders u16 x levels
#   names: lp_filter, fan_filters, extension as (u16 length + utf-8)
#   pad record: original_width, original_height, pad_right, pad_bottom (u32)
#               + extension_mode name
#   lowpass: rows u32, cols u32, float64 data row-major
#   per level, per subband (tree order): rows u32, cols u32, float64 data

_MAGIC = b"CTLC"


def _pack_name(s):
    b = s.encode()
    return struct.pack("<H", len(b)) + b


def _unpack_name(buf, pos):
    (n,) = struct.unpack_from("<H", buf, pos)
    pos += 2
    return buf[pos:pos + n].decode(), pos + n


def _pack_grid(g):
    return struct.pack("<II", g.shape[0], g.shape[1]) + \
        np.ascontiguousarray(g, dtype="<f8").tobytes()


def _unpack_grid(buf, pos):
    r, c = struct.unpack_from("<II", buf, pos)
    pos += 8
    n = r * c * 8
    g = np.frombuffer(buf[pos:pos + n], dtype="<f8").reshape(r, c).copy()
    return g, pos + n


def save_coeffs(coeffs: ContourletCoeffs, path):
    cfg = coeffs.config
    out = [_MAGIC, struct.pack("<HH", 1, cfg.levels)]
    out.append(struct.pack(f"<{cfg.levels}H", *cfg.orders))
    out.extend(_pack_name(s) for s in
               (cfg.lp_filter, cfg.fan_filters, cfg.extension))
    rec = coeffs.pad
    out.append(struct.pack("<IIII", rec.original_width, rec.original_height,
                           rec.pad_right, rec.pad_bottom))
    out.append(_pack_name(rec.extension_mode))
    out.append(_pack_grid(coeffs.lowpass))
    for _, _, band in coeffs.iter_directional():
        out.append(_pack_grid(band))
    with open(path, "wb") as fh:
        fh.write(b"".join(out))


def load_coeffs(path) -> ContourletCoeffs:
    with open(path, "rb") as fh:
        buf = fh.read()
    if buf[:4] != _MAGIC:
        raise ValueError(f"{path}: not a contourlet coefficient dump")
    version, levels = struct.unpack_from("<HH", buf, 4)
    if version != 1:
        raise ValueError(f"{path}: unsupported dump version {version}")
    pos = 8
    orders = struct.unpack_from(f"<{levels}H", buf, pos)
    pos += 2 * levels
    lp_name, pos = _unpack_name(buf, pos)
    fan_name, pos = _unpack_name(buf, pos)
    ext, pos = _unpack_name(buf, pos)
    ow, oh, pr, pb = struct.unpack_from("<IIII", buf, pos)
    pos += 16
    pad_mode, pos = _unpack_name(buf, pos)
    rec = PadRecord(ow, oh, pr, pb, pad_mode)
    cfg = ContourletConfig(levels=levels, orders=orders, lp_filter=lp_name,
                           fan_filters=fan_name, extension=ext)
    lowpass, pos = _unpack_grid(buf, pos)
    directional = []
    ph, pw = rec.padded_height, rec.padded_width
    for k in range(levels):
        bands = []
        for _ in range(2 ** orders[k]):
            g, pos = _unpack_grid(buf, pos)
            bands.append(g)
        directional.append(dfb.DirectionalSubbands(
            order=orders[k], subbands=bands, source_dims=(pw >> k, ph >> k)))
    return ContourletCoeffs(lowpass=lowpass, directional=directional,
                            config=cfg, pad=rec)
