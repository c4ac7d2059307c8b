import numpy as np
import pytest

from contourlite.contourlet import (ContourletConfig, forward, inverse,
                                    load_coeffs, map_coefficients,
                                    save_coeffs)
from contourlite.pyramid import LpFilter, lp_analysis, upsample2_interp


def test_config_validation():
    with pytest.raises(ValueError):
        ContourletConfig(levels=2, orders=(3,))
    with pytest.raises(ValueError):
        ContourletConfig(levels=1, orders=(7,))
    cfg = ContourletConfig(levels=3, orders=(3, 2, 2))
    assert cfg.pad_multiple == 8
    assert ContourletConfig(levels=1, orders=(5,)).pad_multiple == 16


def test_all_orders_zero_equals_lp():
    rng = np.random.default_rng(0)
    x = rng.uniform(0, 255, (64, 64))
    cfg = ContourletConfig(levels=2, orders=(0, 0))
    c = forward(x, cfg)
    dec = lp_analysis(x, 2, cfg.lp_filter, cfg.extension)
    assert np.array_equal(c.lowpass, dec.lowpass)
    for k in range(2):
        assert np.array_equal(c.directional[k].subbands[0], dec.bandpass[k])


def test_constant_image():
    c = forward(np.full((64, 64), 51.0), ContourletConfig(2, (2, 2)))
    for _, _, band in c.iter_directional():
        assert np.max(np.abs(band)) <= 1e-9
    assert np.max(np.abs(c.lowpass - 51.0)) <= 1e-9


@pytest.mark.parametrize("shape,cfg", [
    ((128, 128), ContourletConfig(3, (3, 2, 2))),
    ((64, 64), ContourletConfig(1, (4,))),
    ((100, 90), ContourletConfig(2, (0, 3))),
])
def test_round_trip(shape, cfg):
    rng = np.random.default_rng(1)
    x = rng.uniform(0, 255, shape)
    xr = inverse(forward(x, cfg))
    assert xr.shape == x.shape
    assert np.max(np.abs(xr - x)) <= 1e-9


def test_zero_everything_gives_zero_image():
    x = np.random.default_rng(2).uniform(0, 255, (64, 64))
    c = forward(x, ContourletConfig(2, (2, 2)))
    z = map_coefficients(c, lambda v: v * 0.0, include_lowpass=True)
    assert np.max(np.abs(inverse(z))) <= 1e-12


def test_zero_directional_matches_lp_lowpass_oracle():
    rng = np.random.default_rng(3)
    x = rng.uniform(0, 255, (64, 64))
    cfg = ContourletConfig(2, (2, 2))
    c = forward(x, cfg)
    smoothed = inverse(map_coefficients(c, lambda v: v * 0.0))
    # oracle: interpolate the LP lowpass back up through the pyramid module
    filt = LpFilter.named(cfg.lp_filter)
    up = c.lowpass
    for _ in range(cfg.levels):
        up = upsample2_interp(up, filt, cfg.extension)
    assert np.max(np.abs(smoothed - up)) <= 1e-9


def test_map_identity_and_doubling():
    rng = np.random.default_rng(4)
    x = rng.uniform(0, 255, (64, 64))
    cfg = ContourletConfig(2, (2, 1))
    c = forward(x, cfg)
    ident = map_coefficients(c, lambda v: v)
    for (_, _, a), (_, _, b) in zip(c.iter_directional(),
                                    ident.iter_directional()):
        assert np.array_equal(a, b)
    # x2 on directional only: reconstruction = 2x - lowpass-only image
    doubled = inverse(map_coefficients(c, lambda v: 2.0 * v))
    lowonly = inverse(map_coefficients(c, lambda v: 0.0 * v))
    assert np.max(np.abs(doubled - (2.0 * x - lowonly))) <= 1e-9


def test_map_scalar_only_function():
    import math

    x = np.random.default_rng(5).uniform(0, 255, (32, 32))
    c = forward(x, ContourletConfig(1, (1,)))
    mapped = map_coefficients(c, lambda v: math.copysign(1.0, v))
    vals = np.unique(mapped.directional[0].subbands[0])
    assert set(vals).issubset({-1.0, 1.0})


def test_linearity_of_forward_and_inverse():
    rng = np.random.default_rng(8)
    x = rng.uniform(0, 255, (64, 64))
    y = rng.uniform(0, 255, (64, 64))
    a, b = 1.5, -0.75
    cfg = ContourletConfig(2, (2, 2))
    cxy = forward(a * x + b * y, cfg)
    cx, cy = forward(x, cfg), forward(y, cfg)
    for (_, _, gxy), (_, _, gx), (_, _, gy) in zip(
            cxy.iter_directional(), cx.iter_directional(),
            cy.iter_directional()):
        assert np.max(np.abs(gxy - a * gx - b * gy)) <= 1e-9
    assert np.max(np.abs(cxy.lowpass - a * cx.lowpass - b * cy.lowpass)) \
        <= 1e-9


def test_structural_determinism():
    x = np.random.default_rng(6).uniform(0, 255, (96, 64))
    cfg = ContourletConfig(3, (3, 2, 2))
    c1 = forward(x, cfg)
    c2 = forward(x, cfg)
    assert np.array_equal(c1.lowpass, c2.lowpass)
    for (_, _, a), (_, _, b) in zip(c1.iter_directional(),
                                    c2.iter_directional()):
        assert np.array_equal(a, b)


def test_total_coefficients_within_lp_redundancy():
    x = np.zeros((128, 128))
    c = forward(x, ContourletConfig(3, (3, 2, 2)))
    assert c.total_coefficients <= (128 * 128 * 4) // 3 + 4


def test_dump_round_trip(tmp_path):
    x = np.random.default_rng(7).uniform(0, 255, (70, 41))
    cfg = ContourletConfig(2, (2, 1), extension="periodic")
    c = forward(x, cfg)
    path = tmp_path / "coeffs.ctlc"
    save_coeffs(c, path)
    c2 = load_coeffs(path)
    assert c2.config == c.config
    assert c2.pad == c.pad
    assert np.array_equal(c2.lowpass, c.lowpass)
    for (_, _, a), (_, _, b) in zip(c.iter_directional(),
                                    c2.iter_directional()):
        assert np.array_equal(a, b)
    assert np.max(np.abs(inverse(c2) - x)) <= 1e-9


def test_dump_rejects_garbage(tmp_path):
    p = tmp_path / "bad.ctlc"
    p.write_bytes(b"NOPE" + bytes(64))
    with pytest.raises(ValueError):
        load_coeffs(p)
