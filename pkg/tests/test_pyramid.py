import numpy as np
import pytest

from contourlite.pyramid import (LpDecomposition, LpFilter, blur, downsample2,
                                 lp_analysis, lp_synthesis, upsample2_interp)


def _mirror(i, n):
    # whole-sample symmetric index (… 2 1 | 0 1 2 … n-1 | n-2 n-3 …)
    if n == 1:
        return 0
    period = 2 * n - 2
    i = i % period
    return i if i < n else period - i


def _conv2_sym(x, kern2d):
    """Brute-force 2-D correlation with whole-sample symmetric extension."""
    kh, kw = kern2d.shape
    ch, cw = kh // 2, kw // 2
    out = np.zeros_like(x)
    for i in range(x.shape[0]):
        for j in range(x.shape[1]):
            acc = 0.0
            for a in range(kh):
                for b in range(kw):
                    ii = _mirror(i + a - ch, x.shape[0])
                    jj = _mirror(j + b - cw, x.shape[1])
                    acc += kern2d[a, b] * x[ii, jj]
            out[i, j] = acc
    return out


def _lp_level_oracle(x, filt: LpFilter):
    """Scalar reference for one analysis level."""
    k2 = np.outer(filt.taps, filt.taps)
    low = _conv2_sym(x, k2)[0::2, 0::2]
    up = np.zeros_like(x)
    up[0::2, 0::2] = low
    k2i = np.outer(filt.interp_taps, filt.interp_taps)
    interp = _conv2_sym(up, k2i)
    return low, x - interp


def test_filter_construction():
    f = LpFilter.burt()
    assert len(f.taps) == 5 and f.center_index == 2
    assert abs(f.dc_gain - 1.0) < 1e-12
    g = LpFilter.biorthogonal_9_7()
    assert abs(g.dc_gain - 1.0) < 1e-12
    with pytest.raises(ValueError):
        LpFilter(name="bad", taps=np.array([0.5, 0.5]),
                 interp_taps=np.array([1.0]))


@pytest.mark.parametrize("filt", ["burt", "9-7"])
def test_constant_images_have_zero_bandpass(filt):
    dec = lp_analysis(np.full((32, 32), 77.0), 3, filt)
    for band in dec.bandpass:
        assert np.max(np.abs(band)) <= 1e-10
    assert np.max(np.abs(dec.lowpass - 77.0)) <= 1e-9


def test_impulse_level1_matches_bruteforce_oracle():
    x = np.zeros((8, 8))
    x[3, 4] = 1.0
    filt = LpFilter.burt()
    low_o, band_o = _lp_level_oracle(x, filt)
    dec = lp_analysis(x, 1, filt, mode="symmetric")
    assert np.max(np.abs(dec.lowpass - low_o)) <= 1e-12
    assert np.max(np.abs(dec.bandpass[0] - band_o)) <= 1e-12


def test_4x4_single_level_oracle():
    rng = np.random.default_rng(9)
    x = rng.uniform(0, 255, (4, 4))
    filt = LpFilter.burt()
    low_o, band_o = _lp_level_oracle(x, filt)
    dec = lp_analysis(x, 1, filt)
    assert np.max(np.abs(dec.lowpass - low_o)) <= 1e-12
    assert np.max(np.abs(dec.bandpass[0] - band_o)) <= 1e-12
    rec = lp_synthesis(dec, filt)
    assert np.max(np.abs(rec - x)) <= 1e-12


@pytest.mark.parametrize("mode", ["symmetric", "periodic"])
@pytest.mark.parametrize("filt", ["burt", "9-7"])
def test_perfect_reconstruction(mode, filt):
    rng = np.random.default_rng(3)
    x = rng.uniform(0, 255, (64, 64))
    dec = lp_analysis(x, 3, filt, mode)
    rec = lp_synthesis(dec, filt, mode)
    assert np.max(np.abs(rec - x)) <= 1e-10


def test_linearity():
    rng = np.random.default_rng(4)
    x = rng.uniform(0, 255, (32, 32))
    y = rng.uniform(0, 255, (32, 32))
    a, b = 1.7, -0.4
    dxy = lp_analysis(a * x + b * y, 2)
    dx = lp_analysis(x, 2)
    dy = lp_analysis(y, 2)
    assert np.max(np.abs(dxy.lowpass - a * dx.lowpass - b * dy.lowpass)) <= 1e-10
    for k in range(2):
        comb = a * dx.bandpass[k] + b * dy.bandpass[k]
        assert np.max(np.abs(dxy.bandpass[k] - comb)) <= 1e-10


def test_coefficient_count_redundancy():
    x = np.zeros((64, 64))
    for levels in (1, 2, 3):
        dec = lp_analysis(x, levels)
        expected = sum((64 >> k) ** 2 for k in range(levels)) \
            + (64 >> levels) ** 2
        assert dec.total_samples == expected
        assert dec.total_samples <= 4 * x.size // 3 + 1


def test_zero_bandpass_reconstructs_interpolated_lowpass():
    rng = np.random.default_rng(5)
    x = rng.uniform(0, 255, (16, 16))
    dec = lp_analysis(x, 2)
    zeroed = LpDecomposition(
        lowpass=dec.lowpass,
        bandpass=[np.zeros_like(b) for b in dec.bandpass],
        levels=dec.levels,
    )
    rec = lp_synthesis(zeroed)
    expected = upsample2_interp(
        upsample2_interp(dec.lowpass, LpFilter.burt()), LpFilter.burt())
    assert np.max(np.abs(rec - expected)) <= 1e-12


def test_dimension_errors():
    with pytest.raises(ValueError):
        lp_analysis(np.zeros((10, 10)), 2)  # 10 not divisible by 4
    with pytest.raises(ValueError):
        lp_analysis(np.zeros((8, 8)), 0)
    dec = lp_analysis(np.zeros((8, 8)), 1)
    bad = LpDecomposition(lowpass=np.zeros((4, 4)),
                          bandpass=[np.zeros((8, 8))], levels=1)
    bad.bandpass[0] = np.zeros((6, 8))
    with pytest.raises(ValueError):
        lp_synthesis(bad)


def test_blur_downsample_helpers_agree_with_analysis():
    rng = np.random.default_rng(6)
    x = rng.uniform(0, 255, (16, 16))
    filt = LpFilter.burt()
    dec = lp_analysis(x, 1, filt)
    low = downsample2(blur(x, filt))
    assert np.array_equal(low, dec.lowpass)
    band = x - upsample2_interp(low, filt)
    assert np.array_equal(band, dec.bandpass[0])
