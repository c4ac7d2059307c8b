"""Command-line driver: noise injection, denoising, PSNR sweeps, and the
six-image comparison panel.

Sweeps take the noise VARIANCE on the command line (the x-axis of the
usual PSNR-vs-variance plots); sigma = sqrt(variance) internally.  All
commands are deterministic given explicit seeds.  CSV schema:
``image,variance,seed,method,psnr_db,runtime_ms,config``.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import imageio
from .contourlet import ContourletConfig
from .denoise import denoise_contourlet
from .metrics import psnr
from .wavelet import denoise_hard, denoise_soft, denoise_wiener

METHODS = ("hard", "soft", "wiener", "contourlet")
CSV_HEADER = ["image", "variance", "seed", "method", "psnr_db",
              "runtime_ms", "config"]
DEFAULT_VARIANCES = (100.0, 225.0, 400.0, 625.0, 900.0)


def _fail(msg):
    print(f"error: {msg}", file=sys.stderr)
    return 1


def _parse_orders(text, levels):
    if text is None:
        if levels == 3:
            return (3, 2, 2)
        return tuple([2] * levels)
    orders = tuple(int(t) for t in text.split(","))
    return orders


def _contourlet_config(args):
    return ContourletConfig(levels=args.levels,
                            orders=_parse_orders(args.orders, args.levels))


def _run_method(method, noisy, clean, args):
    """Returns (denoised, psnr_db vs clean, runtime_ms, config digest)."""
    t0 = time.perf_counter()
    if method == "contourlet":
        cfg = _contourlet_config(args)
        out, rep = denoise_contourlet(noisy, cfg, mode=args.mode,
                                      scale=args.scale)
        digest = f"{cfg.digest()};{args.mode};x{args.scale:g}"
    else:
        fn = {"hard": denoise_hard, "soft": denoise_soft,
              "wiener": denoise_wiener}[method]
        kwargs = dict(sigma_hint=args.sigma_hint, levels=args.levels,
                      filters=args.wavelet)
        digest = f"{args.wavelet};L{args.levels};periodic"
        if method == "wiener":
            kwargs["window"] = args.window
            digest += f";win{args.window}"
        out, rep = fn(noisy, **kwargs)
    ms = (time.perf_counter() - t0) * 1e3
    score = psnr(clean, out).psnr_db if clean is not None else math.nan
    return out, score, ms, digest


def cmd_add_noise(args):
    grid = imageio.load_image(args.input)
    noisy = imageio.add_awgn(grid, args.sigma, args.seed)
    imageio.save_image(noisy, args.output)
    saved = imageio.quantize(noisy)
    score = psnr(grid, saved)
    shown = "inf" if score.is_infinite else f"{score.psnr_db:.4f}"
    print(f"psnr_db {shown}")
    print(f"mse {score.mse:.6f}")
    return 0


def cmd_denoise(args):
    noisy = imageio.load_image(args.input)
    reference = imageio.load_image(args.reference) if args.reference else None
    if args.method == "contourlet":
        cfg = _contourlet_config(args)
        out, rep = denoise_contourlet(noisy, cfg, mode=args.mode,
                                      scale=args.scale,
                                      clean_reference=reference)
        digest = f"{cfg.digest()};{args.mode};x{args.scale:g}"
        report_text = rep.as_text()
        psnr_out = rep.psnr_denoised
        runtime = rep.runtime_ms
        variance = rep.noise.sigma_n_sq
    else:
        fn = {"hard": denoise_hard, "soft": denoise_soft,
              "wiener": denoise_wiener}[args.method]
        kwargs = dict(sigma_hint=args.sigma_hint, levels=args.levels,
                      filters=args.wavelet, reference=reference)
        digest = f"{args.wavelet};L{args.levels};periodic"
        if args.method == "wiener":
            kwargs["window"] = args.window
            digest += f";win{args.window}"
        out, rep = fn(noisy, **kwargs)
        report_text = rep.as_text()
        psnr_out = rep.psnr_denoised
        runtime = rep.runtime_ms
        variance = rep.noise.sigma_n_sq
    imageio.save_image(out, args.output)
    print(report_text)
    if args.csv:
        new = not os.path.exists(args.csv)
        with open(args.csv, "a", newline="") as fh:
            w = csv.writer(fh)
            if new:
                w.writerow(CSV_HEADER)
            w.writerow([os.path.basename(args.input), f"{variance:.4f}", -1,
                        args.method,
                        "" if psnr_out is None else f"{psnr_out:.4f}",
                        f"{runtime:.1f}", digest])
    return 0


def _sweep_cell(clean, image_name, variance, seed, method, args):
    try:
        noisy = imageio.add_awgn(clean, math.sqrt(variance), seed)
        _, score, ms, digest = _run_method(method, noisy, clean, args)
        return [image_name, f"{variance:g}", seed, method,
                f"{score:.4f}", f"{ms:.1f}", digest]
    except Exception as exc:
        raise RuntimeError(
            f"sweep cell failed: image={image_name} variance={variance} "
            f"seed={seed} method={method}: {exc}") from exc


def cmd_sweep(args):
    if not args.images:
        return _fail("need at least one image")
    variances = args.variances or list(DEFAULT_VARIANCES)
    seeds = args.seeds or [0]
    methods = args.methods or list(METHODS)
    for m in methods:
        if m not in METHODS:
            return _fail(f"unknown method {m!r} (choose from {METHODS})")
    cells = []
    for path in args.images:
        clean = imageio.load_image(path)
        name = os.path.basename(path)
        for variance in variances:
            for seed in seeds:
                for method in methods:
                    cells.append((clean, name, variance, seed, method))
    workers = int(os.environ.get("CONTOURLITE_THREADS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(
                lambda c: _sweep_cell(*c, args), cells))
    else:
        rows = [_sweep_cell(*c, args) for c in cells]
    rows.sort(key=lambda r: (r[0], float(r[1]), int(r[2]), r[3]))
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.output}")
    return 0


def cmd_compare(args):
    clean = imageio.load_image(args.clean)
    os.makedirs(args.outdir, exist_ok=True)
    noisy = imageio.add_awgn(clean, args.sigma, args.seed)
    panel = [("a_original", clean), ("b_noisy", noisy)]
    for tag, method in (("c_hard", "hard"), ("d_soft", "soft"),
                        ("e_wiener", "wiener"), ("f_contourlet",
                                                 "contourlet")):
        out, _, _, _ = _run_method(method, noisy, clean, args)
        panel.append((tag, out))
    rows = []
    for tag, grid in panel:
        path = os.path.join(args.outdir, f"{tag}.{args.format}")
        imageio.save_image(grid, path)
        score = psnr(clean, grid)
        saved_score = psnr(clean, grid, quantize_first=True)
        rows.append([tag,
                     "inf" if score.is_infinite else f"{score.psnr_db:.4f}",
                     "inf" if saved_score.is_infinite
                     else f"{saved_score.psnr_db:.4f}"])
    with open(os.path.join(args.outdir, "psnr.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["file", "psnr_db", "psnr_db_saved"])
        w.writerows(rows)
    for row in rows:
        print(" ".join(str(c) for c in row))
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="contourlite",
        description="Contourlet / wavelet image denoising toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common_method_flags(sp):
        sp.add_argument("--levels", type=int, default=3,
                        help="pyramid / DWT depth (default 3)")
        sp.add_argument("--orders", default=None,
                        help="comma-separated DFB orders per level, "
                             "finest first (default 3,2,2)")
        sp.add_argument("--mode", default="per_subband",
                        choices=("paper_literal", "per_subband", "bayes"),
                        help="contourlet threshold mode")
        sp.add_argument("--scale", type=float, default=1.0,
                        help="threshold scale multiplier")
        sp.add_argument("--wavelet", default="db4",
                        help="wavelet family for the baselines")
        sp.add_argument("--window", type=int, default=5,
                        help="Wiener window side length (odd)")
        sp.add_argument("--sigma-hint", type=float, default=None,
                        dest="sigma_hint",
                        help="known noise sigma for the baselines")

    sp = sub.add_parser("add-noise", help="add seeded white Gaussian noise")
    sp.add_argument("input")
    sp.add_argument("output")
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_add_noise)

    sp = sub.add_parser("denoise", help="denoise one image")
    sp.add_argument("input")
    sp.add_argument("output")
    sp.add_argument("--method", required=True, choices=METHODS)
    sp.add_argument("--reference", default=None,
                    help="clean image for PSNR reporting")
    sp.add_argument("--csv", default=None,
                    help="append a summary row to this CSV file")
    common_method_flags(sp)
    sp.set_defaults(func=cmd_denoise)

    sp = sub.add_parser("sweep", help="PSNR-vs-variance sweep to CSV")
    sp.add_argument("images", nargs="+")
    sp.add_argument("--variances", type=float, nargs="+", default=None,
                    help=f"noise variances (default {DEFAULT_VARIANCES})")
    sp.add_argument("--seeds", type=int, nargs="+", default=None)
    sp.add_argument("--methods", nargs="+", default=None,
                    help=f"subset of {METHODS}")
    sp.add_argument("-o", "--output", required=True, help="output CSV path")
    common_method_flags(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("compare",
                        help="six-image comparison panel + PSNR CSV")
    sp.add_argument("clean")
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--outdir", required=True)
    sp.add_argument("--format", default="pgm", choices=("pgm", "png"))
    common_method_flags(sp)
    sp.set_defaults(func=cmd_compare)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (imageio.ImageIOError, ValueError, RuntimeError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
