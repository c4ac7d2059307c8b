"""Directional filter bank: 2^l wedge-shaped subbands via iterated
two-channel quincunx filter banks in a lifting (ladder) structure.

Each tree node splits its input on the checkerboard (quincunx) lattice:

    D = X_odd  - K(X_even)          (predict)
    A = X_even + K(D) / 2           (update)

where K is a windowed ideal "fan difference" interpolator whose transfer
is +1 on the row-frequency bowtie |nu| < |mu| and -1 on the complementary
bowtie (closed form 4 / (pi^2 (v2^2 - v1^2)) on odd-sum offsets v).
Perfect reconstruction holds by construction for any kernel; the kernel
only shapes the wedge selectivity.  Channels are rescaled by sqrt(2)
(A up, D down) so white noise keeps equal variance in every subband.

Around the lifting core, integer shear resamplings steer the fan to the
wedge orientation each node needs, and each output is repacked onto a
rectangular grid by a shear + row/column decimation.  The per-node
choices (shear, kernel sign, packing, child order) are frozen in
``_POLICY``, which was derived by maximising measured in-wedge energy
separation over oriented-sinusoid probes and is part of the format: the
subband index is the binary path through the tree (MSB = first split)
with child labels chosen so the index increases with wedge angle, from
slope -1 over row-dominant frequencies to slope -1 over column-dominant.

Subband shapes on an M x N input (order l >= 2): the first 2^(l-1)
subbands are (M / 2^(l-1), N / 2), the rest (M / 2, N / 2^(l-1)); order 1
gives two (M, N/2) halves.  All filtering is periodic; M and N must be
divisible by 2^(l-1) (2 for order 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .imageio import as_grid

__all__ = [
    "FanFilterPair",
    "DirectionalSubbands",
    "quincunx_resample",
    "dfb_analysis",
    "dfb_synthesis",
    "dfb_required_divisor",
    "expected_subband_shapes",
]

MAX_ORDER = 6

_SQRT2 = float(np.sqrt(2.0))


def _fan_sinc_kernel(radius):
    """Windowed ideal fan-difference interpolator on odd-sum offsets."""
    v1, v2 = np.indices((2 * radius + 1, 2 * radius + 1)) - radius
    odd = (v1 + v2) % 2 != 0
    with np.errstate(divide="ignore"):
        k = 4.0 / (np.pi ** 2 * (v2 ** 2 - v1 ** 2).astype(float))
    k[~odd] = 0.0
    w1 = np.cos(np.pi * v1 / (2 * (radius + 1))) ** 2
    w2 = np.cos(np.pi * v2 / (2 * (radius + 1))) ** 2
    return k * w1 * w2


@dataclass(frozen=True)
class FanFilterPair:
    """Lifting kernel of the two-channel fan filter bank.

    ``kernel`` is the 2-D predict/update kernel (odd-sum support).  The
    equivalent four filters of the classical analysis/synthesis form can
    be materialised with :meth:`equivalent_filters`; ``self_test``
    verifies two-channel perfect reconstruction.
    """

    name: str
    kernel: np.ndarray
    structure: str = "ladder"

    @classmethod
    def named(cls, name):
        if isinstance(name, cls):
            return name
        if name in ("fan4", "fan8", "fan12"):
            return cls(name=name, kernel=_fan_sinc_kernel(int(name[3:])))
        if name == "haar":
            # single-tap predict from the right-hand neighbour
            k = np.zeros((3, 3))
            k[1, 2] = 1.0
            return cls(name="haar", kernel=k)
        raise ValueError(f"unknown fan filter {name!r}")

    def equivalent_filters(self, size=32):
        """Impulse responses (h0, h1, g0, g1) of the equivalent filters.

        h: analysis (input -> channel, before repacking), g: synthesis.
        Mostly useful for inspection and the PR self test.
        """
        h, g = [], []
        imp = np.zeros((size, size))
        imp[size // 2, size // 2] = 1.0
        A, D = _fan_split(imp, self, 1.0)
        h = [A, D]
        zero = np.zeros_like(imp)
        g = [_fan_merge(imp * _checker(imp.shape), zero, self, 1.0),
             _fan_merge(zero, imp * ~_checker(imp.shape), self, 1.0)]
        return h[0], h[1], g[0], g[1]

    def self_test(self, size=32, seed=0, tol=1e-10):
        """Check synthesis(analysis(x)) == x on a random grid."""
        rng = np.random.default_rng(seed)
        x = rng.normal(size=(size, size))
        A, D = _fan_split(x, self, 1.0)
        err = float(np.max(np.abs(_fan_merge(A, D, self, 1.0) - x)))
        if err > tol:
            raise AssertionError(f"fan filter PR self-test failed: {err}")
        return err


@dataclass
class DirectionalSubbands:
    """Ordered 2^order directional subbands of one grid."""

    order: int
    subbands: list
    source_dims: tuple  # (width, height) of the analysed grid

    def __post_init__(self):
        if len(self.subbands) != 2 ** self.order:
            raise ValueError(
                f"expected {2 ** self.order} subbands, got {len(self.subbands)}")
        w, h = self.source_dims
        total = sum(b.size for b in self.subbands)
        if total != w * h:
            raise ValueError(
                f"subband samples {total} do not match source {w * h}")
        for k, (b, exp) in enumerate(
                zip(self.subbands, expected_subband_shapes(self.order, (h, w)))):
            if b.shape != exp:
                raise ValueError(f"subband {k} shape {b.shape}, expected {exp}")

    @property
    def total_samples(self):
        return sum(b.size for b in self.subbands)


# --------------------------------------------------------------- shears


def _shear(x, axis, slope):
    M, N = x.shape
    if slope == 0:
        return x.copy()
    if axis == 0:
        i = (np.arange(M)[:, None] + slope * np.arange(N)[None, :]) % M
        return x[i, np.arange(N)[None, :]]
    j = (np.arange(N)[None, :] + slope * np.arange(M)[:, None]) % N
    return x[np.arange(M)[:, None], j]


def quincunx_resample(grid, matrix, direction="forward"):
    """Lattice resampling operators used by the filter bank.

    Shears (unimodular, bijections on the sample set):
      R0: y[m,n] = x[(m+n) % M, n]        R1 = inverse of R0
      R2: y[m,n] = x[m, (n+m) % N]        R3 = inverse of R2

    Quincunx 2:1 decimations retaining samples with (i+j) even:
      Q0: row-packed  y[a,b] = x[(2a+b) % M, b]   -> (M/2, N)
      Q1: col-packed  y[a,b] = x[a, (2b+a) % N]   -> (M, N/2)
    Their "inverse" places the retained samples back on the even coset
    (zeros elsewhere), so forward(inverse(y)) == y.
    """
    g = as_grid(grid)
    M, N = g.shape
    fwd = direction == "forward"
    if direction not in ("forward", "inverse"):
        raise ValueError(f"unknown direction {direction!r}")
    if matrix == "R0":
        return _shear(g, 0, 1 if fwd else -1)
    if matrix == "R1":
        return _shear(g, 0, -1 if fwd else 1)
    if matrix == "R2":
        return _shear(g, 1, 1 if fwd else -1)
    if matrix == "R3":
        return _shear(g, 1, -1 if fwd else 1)
    if matrix == "Q0":
        if fwd:
            if M % 2:
                raise ValueError(f"Q0 needs an even row count, got {M}")
            return _shear(g, 0, 1)[0::2, :]
        z = np.zeros((2 * M, N))
        z[0::2, :] = g
        return _shear(z, 0, -1)
    if matrix == "Q1":
        if fwd:
            if N % 2:
                raise ValueError(f"Q1 needs an even column count, got {N}")
            return _shear(g, 1, 1)[:, 0::2]
        z = np.zeros((M, 2 * N))
        z[:, 0::2] = g
        return _shear(z, 1, -1)
    raise ValueError(f"unknown resampling matrix {matrix!r}")


# ---------------------------------------------------------- lifting core

_KFT_CACHE = {}


def _kernel_ft(filt: FanFilterPair, shape):
    key = (filt.name, shape)
    kft = _KFT_CACHE.get(key)
    if kft is None:
        M, N = shape
        kern = filt.kernel
        R = kern.shape[0] // 2
        kp = np.zeros(shape)
        for a in range(kern.shape[0]):
            for b in range(kern.shape[1]):
                if kern[a, b] != 0.0:
                    kp[(-(a - R)) % M, (-(b - R)) % N] += kern[a, b]
        kft = np.fft.rfft2(kp)
        _KFT_CACHE[key] = kft
    return kft


def _fan_conv(x, filt, sign):
    """Periodic correlation y[q] = sign * sum_v k[v] x[q+v]."""
    kft = _kernel_ft(filt, x.shape)
    return sign * np.fft.irfft2(np.fft.rfft2(x) * kft, s=x.shape)


def _checker(shape):
    i, j = np.indices(shape)
    return (i + j) % 2 == 0


def _fan_split(u, filt, sign):
    E = _checker(u.shape)
    XE = np.where(E, u, 0.0)
    XO = u - XE
    D = XO - np.where(E, 0.0, _fan_conv(XE, filt, sign))
    A = XE + 0.5 * np.where(E, _fan_conv(D, filt, sign), 0.0)
    return A, D


def _fan_merge(A, D, filt, sign):
    E = _checker(A.shape)
    XE = A - 0.5 * np.where(E, _fan_conv(D, filt, sign), 0.0)
    XO = D + np.where(E, 0.0, _fan_conv(XE, filt, sign))
    return XE + XO


def _pack(xfull, phase, form):
    if form == "row+":
        return _shear(xfull, 0, 1)[phase::2, :]
    if form == "row-":
        return _shear(xfull, 0, -1)[phase::2, :]
    if form == "col+":
        return _shear(xfull, 1, 1)[:, phase::2]
    if form == "col-":
        return _shear(xfull, 1, -1)[:, phase::2]
    raise ValueError(form)


def _unpack(y, phase, form):
    if form.startswith("row"):
        z = np.zeros((2 * y.shape[0], y.shape[1]))
        z[phase::2, :] = y
        return _shear(z, 0, -1 if form == "row+" else 1)
    z = np.zeros((y.shape[0], 2 * y.shape[1]))
    z[:, phase::2] = y
    return _shear(z, 1, -1 if form == "col+" else 1)


def _split_node(u, filt, policy):
    shears, sign, form, swap = policy
    v = u
    for ax, sl in shears:
        v = _shear(v, ax, sl)
    A, D = _fan_split(v, filt, sign)
    a = _pack(A, 0, form) * _SQRT2
    d = _pack(D, 1, form) / _SQRT2
    return (d, a) if swap else (a, d)


def _merge_node(c0, c1, filt, policy):
    shears, sign, form, swap = policy
    a, d = (c1, c0) if swap else (c0, c1)
    A = _unpack(a / _SQRT2, 0, form)
    D = _unpack(d * _SQRT2, 1, form)
    v = _fan_merge(A, D, filt, sign)
    for ax, sl in reversed(shears):
        v = _shear(v, ax, -sl)
    return v


# Frozen per-node tree policy: (depth, index) -> (shears, sign, pack, swap).
# Derived once by probe search (oriented sinusoids, 128x128, margin 0.2);
# in-wedge energy separation is >= 0.956 at every node, >= 0.985 for
# orders up to 5.  Do not edit piecemeal: entries are format-defining.
_POLICY = {
    (1, 0): ((), +1.0, 'col+', False),
    (2, 0): (((0, -1),), +1.0, 'row+', True),
    (2, 1): (((0, -1),), +1.0, 'row-', False),
    (3, 0): ((), +1.0, 'row+', True),
    (3, 1): (((1, -2),), +1.0, 'row-', False),
    (3, 2): (((1, 2),), +1.0, 'col+', True),
    (3, 3): ((), -1.0, 'col-', True),
    (4, 0): ((), +1.0, 'row+', True),
    (4, 1): (((1, -2),), -1.0, 'row-', True),
    (4, 2): (((1, 2),), -1.0, 'row+', False),
    (4, 3): ((), +1.0, 'row-', False),
    (4, 4): (((0, -2),), -1.0, 'col-', True),
    (4, 5): ((), +1.0, 'col+', True),
    (4, 6): ((), +1.0, 'col-', False),
    (4, 7): (((0, 2),), -1.0, 'col+', False),
    (5, 0): ((), -1.0, 'row+', False),
    (5, 1): (((1, -2),), -1.0, 'row-', True),
    (5, 2): (((1, 2),), +1.0, 'row+', True),
    (5, 3): ((), -1.0, 'row-', True),
    (5, 4): ((), -1.0, 'row+', False),
    (5, 5): (((1, -2),), +1.0, 'row-', False),
    (5, 6): (((1, 2),), -1.0, 'row+', False),
    (5, 7): ((), -1.0, 'row-', True),
    (5, 8): ((), +1.0, 'col-', False),
    (5, 9): (((0, 2),), +1.0, 'col+', True),
    (5, 10): (((0, -2),), -1.0, 'col-', True),
    (5, 11): ((), +1.0, 'col+', True),
    (5, 12): ((), +1.0, 'col-', False),
    (5, 13): (((0, 2),), +1.0, 'col+', True),
    (5, 14): (((0, -2),), -1.0, 'col-', True),
    (5, 15): ((), +1.0, 'col+', True),
    (6, 0): ((), +1.0, 'row+', True),
    (6, 1): (((1, -2),), -1.0, 'row+', True),
    (6, 2): (((1, 2),), -1.0, 'row+', False),
    (6, 3): ((), -1.0, 'row+', True),
    (6, 4): ((), +1.0, 'row+', True),
    (6, 5): (((1, -2),), -1.0, 'row+', True),
    (6, 6): (((1, 2),), -1.0, 'row+', False),
    (6, 7): ((), +1.0, 'row+', False),
    (6, 8): ((), +1.0, 'row+', True),
    (6, 9): (((1, -2),), -1.0, 'row+', True),
    (6, 10): (((1, 2),), -1.0, 'row+', False),
    (6, 11): ((), +1.0, 'row+', False),
    (6, 12): ((), -1.0, 'row+', False),
    (6, 13): (((1, -2),), -1.0, 'row+', True),
    (6, 14): (((1, 2),), -1.0, 'row+', False),
    (6, 15): ((), +1.0, 'row+', False),
    (6, 16): ((), +1.0, 'col+', False),
    (6, 17): (((0, 2),), +1.0, 'col+', True),
    (6, 18): (((0, -2),), +1.0, 'col+', False),
    (6, 19): ((), +1.0, 'col+', True),
    (6, 20): ((), -1.0, 'col+', True),
    (6, 21): (((0, 2),), +1.0, 'col+', True),
    (6, 22): (((0, -2),), +1.0, 'col+', False),
    (6, 23): ((), -1.0, 'col+', False),
    (6, 24): ((), -1.0, 'col+', True),
    (6, 25): (((0, 2),), +1.0, 'col+', True),
    (6, 26): (((0, -2),), +1.0, 'col+', False),
    (6, 27): ((), +1.0, 'col+', True),
    (6, 28): ((), -1.0, 'col+', True),
    (6, 29): (((0, 2),), +1.0, 'col+', True),
    (6, 30): (((0, -2),), +1.0, 'col+', False),
    (6, 31): ((), -1.0, 'col+', False),
}


def dfb_required_divisor(order):
    """Both grid dims must be divisible by this for the given order."""
    if order == 0:
        return 1
    return 2 ** max(1, order - 1)


def expected_subband_shapes(order, shape):
    """Closed-form subband shapes (row, col) for an input of ``shape``."""
    M, N = shape
    if order == 0:
        return [(M, N)]
    if order == 1:
        return [(M, N // 2)] * 2
    half = 2 ** (order - 1)
    first = (M // half, N // 2)
    second = (M // 2, N // half)
    return [first] * half + [second] * half


def dfb_analysis(grid, order, filters="fan8") -> DirectionalSubbands:
    """Split a grid into 2^order directional subbands (critically sampled).

    Subband index = binary path through the split tree, MSB = first split,
    increasing with wedge angle.  Requires order <= 6 and both dims
    divisible by :func:`dfb_required_divisor`.
    """
    g = as_grid(grid)
    if not (0 <= order <= MAX_ORDER):
        raise ValueError(f"order must be in 0..{MAX_ORDER}, got {order}")
    filt = FanFilterPair.named(filters)
    M, N = g.shape
    div = dfb_required_divisor(order)
    if M % div or N % div:
        raise ValueError(f"dims {g.shape} not divisible by {div} "
                         f"(required for order {order})")
    if order == 0:
        return DirectionalSubbands(order=0, subbands=[g.copy()],
                                   source_dims=(N, M))
    nodes = [g]
    for d in range(1, order + 1):
        nxt = []
        for idx, u in enumerate(nodes):
            nxt.extend(_split_node(u, filt, _POLICY[(d, idx)]))
        nodes = nxt
    return DirectionalSubbands(order=order, subbands=nodes,
                               source_dims=(N, M))


def dfb_synthesis(subbands: DirectionalSubbands, filters="fan8"):
    """Exact inverse of :func:`dfb_analysis`."""
    filt = FanFilterPair.named(filters)
    order = subbands.order
    if order == 0:
        return subbands.subbands[0].copy()
    nodes = list(subbands.subbands)
    for d in range(order, 0, -1):
        nodes = [
            _merge_node(nodes[2 * i], nodes[2 * i + 1], filt, _POLICY[(d, i)])
            for i in range(len(nodes) // 2)
        ]
    return nodes[0]
