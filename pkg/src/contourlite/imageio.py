"""Grayscale image I/O, seeded Gaussian noise, and dyadic padding.

Images are plain 2-D float64 numpy arrays in row-major order, with the
nominal display range [0, 255].  Values are allowed to leave that range
inside transforms and noisy intermediates; clamping and quantisation
happen only when a grid is written to disk.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ImageIOError",
    "UnreadableFileError",
    "CorruptHeaderError",
    "UnsupportedBitDepthError",
    "UnwritableFileError",
    "PadRecord",
    "as_grid",
    "load_image",
    "save_image",
    "quantize",
    "add_awgn",
    "pad_for_levels",
    "crop_to_record",
]


class ImageIOError(Exception):
    """Base class for image I/O failures."""


class UnreadableFileError(ImageIOError):
    """The file does not exist or cannot be opened/parsed at all."""


class CorruptHeaderError(ImageIOError):
    """The file was opened but its header is malformed."""


class UnsupportedBitDepthError(ImageIOError):
    """The file is a recognised format but not 8-bit grayscale."""


class UnwritableFileError(ImageIOError):
    """The output path cannot be written."""


@dataclass(frozen=True)
class PadRecord:
    """Bookkeeping needed to undo :func:`pad_for_levels`."""

    original_width: int
    original_height: int
    pad_right: int
    pad_bottom: int
    extension_mode: str = "symmetric"

    @property
    def padded_width(self):
        return self.original_width + self.pad_right

    @property
    def padded_height(self):
        return self.original_height + self.pad_bottom


def as_grid(a) -> np.ndarray:
    """Validate and return ``a`` as a 2-D float64 image grid.

    Raises ValueError on wrong dimensionality, empty axes, or non-finite
    values.
    """
    g = np.asarray(a, dtype=np.float64)
    if g.ndim != 2:
        raise ValueError(f"image grid must be 2-D, got shape {g.shape}")
    if g.shape[0] < 1 or g.shape[1] < 1:
        raise ValueError(f"image grid must be at least 1x1, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("image grid contains NaN or Inf values")
    return g


_PGM_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _read_pgm(path):
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(b"P5"):
        raise CorruptHeaderError(f"{path}: not a binary PGM (missing P5 magic)")
    pos = 2
    fields = []
    while len(fields) < 3:
        m = _PGM_TOKEN.match(data, pos)
        if m is None:
            raise CorruptHeaderError(f"{path}: truncated PGM header")
        tok = m.group(1)
        # comments may also follow a token boundary mid-header
        if tok.startswith(b"#"):
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise CorruptHeaderError(f"{path}: unterminated comment")
            pos = nl + 1
            continue
        fields.append(tok)
        pos = m.end(1)
    try:
        width, height, maxval = (int(f) for f in fields)
    except ValueError:
        raise CorruptHeaderError(f"{path}: non-numeric PGM header fields {fields}")
    if width < 1 or height < 1:
        raise CorruptHeaderError(f"{path}: bad dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedBitDepthError(
            f"{path}: maxval {maxval} unsupported (only 8-bit, maxval 255)"
        )
    # exactly one whitespace byte separates the header from the raster
    pos += 1
    raster = data[pos : pos + width * height]
    if len(raster) < width * height:
        raise CorruptHeaderError(
            f"{path}: raster truncated ({len(raster)} of {width * height} bytes)"
        )
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    return pixels.astype(np.float64)


def _read_png(path):
    from PIL import Image, UnidentifiedImageError

    try:
        img = Image.open(path)
        img.load()
    except UnidentifiedImageError as exc:
        raise CorruptHeaderError(f"{path}: not a valid PNG ({exc})") from exc
    if img.mode == "L":
        return np.asarray(img, dtype=np.float64)
    if img.mode in ("RGB", "RGBA"):
        rgb = np.asarray(img.convert("RGB"), dtype=np.float64)
        # ITU-R 601 luma, rounded half away from zero
        luma = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
        return np.floor(luma + 0.5)
    if img.mode in ("I;16", "I", "F", "I;16B"):
        raise UnsupportedBitDepthError(f"{path}: PNG mode {img.mode} is not 8-bit")
    # palette, 1-bit etc: normalise through L
    return np.asarray(img.convert("L"), dtype=np.float64)


def load_image(path) -> np.ndarray:
    """Load an 8-bit grayscale PGM (P5) or PNG as a float64 grid.

    RGB PNGs are converted with Y = 0.299 R + 0.587 G + 0.114 B, rounded.
    Raises UnreadableFileError, CorruptHeaderError, or
    UnsupportedBitDepthError.
    """
    if not os.path.isfile(path):
        raise UnreadableFileError(f"{path}: no such file")
    ext = os.path.splitext(str(path))[1].lower()
    try:
        if ext == ".png":
            return _read_png(path)
        return _read_pgm(path)
    except OSError as exc:
        raise UnreadableFileError(f"{path}: {exc}") from exc


def quantize(grid) -> np.ndarray:
    """Clamp to [0, 255] and round half away from zero to integers."""
    g = as_grid(grid)
    return np.floor(np.clip(g, 0.0, 255.0) + 0.5)


def save_image(grid, path):
    """Write a grid as binary PGM (P5) or PNG, chosen by file extension.

    Values are clamped to [0, 255] and rounded half away from zero, so a
    reload reproduces ``quantize(grid)`` exactly.
    """
    g = quantize(grid).astype(np.uint8)
    ext = os.path.splitext(str(path))[1].lower()
    try:
        if ext == ".png":
            from PIL import Image

            Image.fromarray(g, mode="L").save(path, format="PNG")
        else:
            h, w = g.shape
            with open(path, "wb") as fh:
                fh.write(b"P5\n%d %d\n255\n" % (w, h))
                fh.write(g.tobytes())
    except OSError as exc:
        raise UnwritableFileError(f"{path}: cannot write ({exc})") from exc


def add_awgn(grid, sigma, seed) -> np.ndarray:
    """Add zero-mean white Gaussian noise of standard deviation ``sigma``.

    Sampling is Box-Muller over numpy's PCG64 uniform stream, so the output
    is a pure, reproducible function of (grid, sigma, seed).  The result is
    deliberately not clamped; clamping happens at save time only.
    """
    g = as_grid(grid)
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return g.copy()
    n = g.size
    npairs = (n + 1) // 2
    rng = np.random.Generator(np.random.PCG64(seed))
    # uniforms in [0,1); shift u1 away from 0 for the log
    u1 = 1.0 - rng.random(npairs)
    u2 = rng.random(npairs)
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * npairs)
    z[0::2] = r * np.cos(2.0 * np.pi * u2)
    z[1::2] = r * np.sin(2.0 * np.pi * u2)
    noise = z[:n].reshape(g.shape)
    return g + sigma * noise


def _pad_width(n, multiple):
    return (-n) % multiple


def pad_for_levels(grid, levels, mode="symmetric"):
    """Pad on the right/bottom to the smallest multiple of ``2**levels``.

    Returns ``(padded, PadRecord)``.  ``mode`` is "symmetric" or
    "periodic"; the record suffices to undo the padding with
    :func:`crop_to_record`.
    """
    g = as_grid(grid)
    if levels < 0:
        raise ValueError(f"levels must be >= 0, got {levels}")
    if mode not in ("symmetric", "periodic"):
        raise ValueError(f"unknown extension mode {mode!r}")
    m = 2 ** levels
    pb = _pad_width(g.shape[0], m)
    pr = _pad_width(g.shape[1], m)
    rec = PadRecord(
        original_width=g.shape[1],
        original_height=g.shape[0],
        pad_right=pr,
        pad_bottom=pb,
        extension_mode=mode,
    )
    if pb == 0 and pr == 0:
        return g.copy(), rec
    np_mode = "symmetric" if mode == "symmetric" else "wrap"
    padded = np.pad(g, ((0, pb), (0, pr)), mode=np_mode)
    return padded, rec


def pad_to_multiple(grid, multiple, mode="symmetric"):
    """Pad on the right/bottom to the smallest multiple of ``multiple``.

    Same record/crop contract as :func:`pad_for_levels`; used by transforms
    whose dyadic requirement is not a plain power of two per side.
    """
    g = as_grid(grid)
    if mode not in ("symmetric", "periodic"):
        raise ValueError(f"unknown extension mode {mode!r}")
    pb = _pad_width(g.shape[0], multiple)
    pr = _pad_width(g.shape[1], multiple)
    rec = PadRecord(
        original_width=g.shape[1],
        original_height=g.shape[0],
        pad_right=pr,
        pad_bottom=pb,
        extension_mode=mode,
    )
    if pb == 0 and pr == 0:
        return g.copy(), rec
    np_mode = "symmetric" if mode == "symmetric" else "wrap"
    return np.pad(g, ((0, pb), (0, pr)), mode=np_mode), rec


def crop_to_record(grid, rec: PadRecord) -> np.ndarray:
    """Crop the top-left original region recorded in ``rec``."""
    g = as_grid(grid)
    if g.shape != (rec.padded_height, rec.padded_width):
        raise ValueError(
            f"grid shape {g.shape} does not match padded dims "
            f"({rec.padded_height}, {rec.padded_width})"
        )
    return g[: rec.original_height, : rec.original_width].copy()
