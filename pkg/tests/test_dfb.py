import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contourlite.dfb import (DirectionalSubbands, FanFilterPair, dfb_analysis,
                             dfb_synthesis, dfb_required_divisor,
                             expected_subband_shapes, quincunx_resample)

# frozen regression: order-2 analysis of a mean-removed ideal step edge with
# normal (2, 1) on 128x128; energy shares per subband (deterministic)
EDGE_SHARES = (0.184645, 0.623452, 0.146609, 0.045295)


def test_shears_are_permutations():
    rng = np.random.default_rng(0)
    g = rng.normal(size=(12, 8))
    for m in ("R0", "R1", "R2", "R3"):
        y = quincunx_resample(g, m)
        assert sorted(y.ravel()) == sorted(g.ravel())
        back = quincunx_resample(y, m, "inverse")
        assert np.array_equal(back, g)


def test_shear_impulse_mapping():
    g = np.zeros((8, 8))
    g[2, 3] = 1.0
    y = quincunx_resample(g, "R0")  # y[m,n] = x[(m+n)%8, n]
    assert y[(2 - 3) % 8, 3] == 1.0 and np.sum(y != 0) == 1
    y = quincunx_resample(g, "R2")  # y[m,n] = x[m, (n+m)%8]
    assert y[2, (3 - 2) % 8] == 1.0 and np.sum(y != 0) == 1


def test_q0_bruteforce_enumeration():
    g = np.arange(16, dtype=float).reshape(4, 4)
    y = quincunx_resample(g, "Q0")
    assert y.shape == (2, 4)
    # documented layout: y[a, b] = x[(2a + b) % 4, b]
    for a in range(2):
        for b in range(4):
            assert y[a, b] == g[(2 * a + b) % 4, b]
    # retained samples are exactly the even-sum lattice
    kept = sorted(y.ravel())
    even = sorted(g[i, j] for i in range(4) for j in range(4)
                  if (i + j) % 2 == 0)
    assert kept == even


def test_q_right_inverse():
    rng = np.random.default_rng(1)
    g = rng.normal(size=(6, 10))
    for m in ("Q0", "Q1"):
        packed = quincunx_resample(g, m)
        full = quincunx_resample(packed, m, "inverse")
        assert np.array_equal(quincunx_resample(full, m), packed)
        i, j = np.indices(full.shape)
        assert np.all(full[(i + j) % 2 == 1] == 0)


@settings(max_examples=20, deadline=None)
@given(h=st.integers(2, 12), w=st.integers(2, 12),
       m=st.sampled_from(["R0", "R1", "R2", "R3"]))
def test_shear_multiset_property(h, w, m):
    rng = np.random.default_rng(h * 13 + w)
    g = rng.normal(size=(h, w))
    y = quincunx_resample(g, m)
    assert np.array_equal(np.sort(y.ravel()), np.sort(g.ravel()))


def test_order_zero_identity():
    g = np.random.default_rng(2).normal(size=(16, 16))
    sb = dfb_analysis(g, 0)
    assert len(sb.subbands) == 1
    assert np.array_equal(sb.subbands[0], g)
    assert np.array_equal(dfb_synthesis(sb), g)


@pytest.mark.parametrize("order", range(7))
def test_perfect_reconstruction_and_sampling(order):
    rng = np.random.default_rng(3 + order)
    x = rng.uniform(-100, 100, (64, 64))
    sb = dfb_analysis(x, order)
    assert sb.total_samples == x.size
    assert len(sb.subbands) == 2 ** order
    xr = dfb_synthesis(sb)
    assert np.max(np.abs(xr - x)) <= 1e-10


def test_pr_with_haar_kernel():
    rng = np.random.default_rng(4)
    x = rng.uniform(-50, 50, (32, 32))
    sb = dfb_analysis(x, 3, "haar")
    assert np.max(np.abs(dfb_synthesis(sb, "haar") - x)) <= 1e-10


def test_haar_kernel_level1_scalar_oracle():
    """Order-1 split with the 1-tap kernel, reproduced by index arithmetic."""
    rng = np.random.default_rng(5)
    x = rng.normal(size=(4, 4))
    M = N = 4
    D = np.zeros((M, N))
    A = np.zeros((M, N))
    for i in range(M):
        for j in range(N):
            if (i + j) % 2 == 1:
                D[i, j] = x[i, j] - x[i, (j + 1) % N]
    for i in range(M):
        for j in range(N):
            if (i + j) % 2 == 0:
                A[i, j] = x[i, j] + 0.5 * D[i, (j + 1) % N]
    # pack per the depth-1 policy: no shear, col+ packing, no swap
    zA = np.zeros((M, N))
    zD = np.zeros((M, N))
    for m in range(M):
        for n in range(N):
            zA[m, n] = A[m, (n + m) % N]
            zD[m, n] = D[m, (n + m) % N]
    exp0 = zA[:, 0::2] * np.sqrt(2.0)
    exp1 = zD[:, 1::2] / np.sqrt(2.0)
    sb = dfb_analysis(x, 1, "haar")
    assert np.max(np.abs(sb.subbands[0] - exp0)) <= 1e-12
    assert np.max(np.abs(sb.subbands[1] - exp1)) <= 1e-12


def test_linearity():
    rng = np.random.default_rng(6)
    x = rng.normal(size=(32, 32))
    y = rng.normal(size=(32, 32))
    a, b = 2.5, -1.25
    sxy = dfb_analysis(a * x + b * y, 3)
    sx = dfb_analysis(x, 3)
    sy = dfb_analysis(y, 3)
    for bxy, bx, by in zip(sxy.subbands, sx.subbands, sy.subbands):
        assert np.max(np.abs(bxy - a * bx - b * by)) <= 1e-10
    # synthesis additivity
    both = DirectionalSubbands(
        order=3,
        subbands=[p + q for p, q in zip(sx.subbands, sy.subbands)],
        source_dims=sx.source_dims)
    assert np.max(np.abs(dfb_synthesis(both) - (x + y))) <= 1e-10


def test_subband_shapes_closed_form():
    x = np.zeros((64, 128))
    for order in range(7):
        sb = dfb_analysis(x, order)
        assert [b.shape for b in sb.subbands] == \
            expected_subband_shapes(order, (64, 128))


def test_required_divisor_and_errors():
    assert dfb_required_divisor(0) == 1
    assert dfb_required_divisor(1) == 2
    assert dfb_required_divisor(4) == 8
    with pytest.raises(ValueError):
        dfb_analysis(np.zeros((6, 6)), 3)  # needs divisibility by 4
    with pytest.raises(ValueError):
        dfb_analysis(np.zeros((8, 8)), 7)
    with pytest.raises(ValueError):
        DirectionalSubbands(order=1, subbands=[np.zeros((2, 2))],
                            source_dims=(4, 2))


@pytest.mark.parametrize("name", ["haar", "fan4", "fan8", "fan12"])
def test_fan_filter_self_test(name):
    filt = FanFilterPair.named(name)
    assert filt.structure == "ladder"
    assert filt.self_test() <= 1e-10


def test_equivalent_filters_exist():
    h0, h1, g0, g1 = FanFilterPair.named("fan8").equivalent_filters(size=16)
    for f in (h0, h1, g0, g1):
        assert f.shape == (16, 16)
        assert np.all(np.isfinite(f))
    assert np.max(np.abs(h0)) > 0 and np.max(np.abs(h1)) > 0


def test_wedge_ordering_with_oriented_sinusoids():
    """Subband index must increase with wedge angle; shares stay high."""
    size = 128
    m, n = np.indices((size, size))
    probes = [(0, -0.75), (0, -0.25), (0, 0.25), (0, 0.75),
              (1, 0.75), (1, 0.25), (1, -0.25), (1, -0.75)]
    for want, (half, t) in enumerate(probes):
        kd = 40
        ks = int(round(t * kd))
        k1, k2 = (kd, ks) if half == 0 else (ks, kd)
        energy = np.zeros(8)
        for phase in (0.0, np.pi / 2):
            x = np.cos(2 * np.pi * (k1 * m + k2 * n) / size + phase)
            sb = dfb_analysis(x, 3)
            energy += np.array([np.sum(b * b) for b in sb.subbands])
        dom = int(np.argmax(energy))
        share = energy[dom] / energy.sum()
        assert dom == want, f"probe {(half, t)}: got subband {dom}"
        assert share >= 0.90


def test_oriented_edge_energy_regression():
    """Step edge with normal (2, 1): slope-1/2 spectrum, order-2 wedge 1.

    A 45-degree edge cannot serve here: its spectral line lies exactly on
    the boundary between the two DFB halves at every order, so its energy
    splits evenly by construction.  The slope-1/2 normal sits at the
    centre of wedge 1.  Shares below are frozen from this build; the
    dominant share is limited to ~0.62 by the 1/f spectrum of an ideal
    step concentrating energy where any critically sampled fan bank
    transitions.
    """
    size = 128
    m, n = np.indices((size, size))
    edge = (2.0 * m + n >= 1.5 * size).astype(float) * 200.0
    edge -= edge.mean()
    sb = dfb_analysis(edge, 2)
    e = np.array([np.sum(b * b) for b in sb.subbands])
    shares = e / e.sum()
    assert int(np.argmax(shares)) == 1
    assert np.max(np.abs(shares - np.array(EDGE_SHARES))) < 1e-3
    assert shares[1] > 0.60
