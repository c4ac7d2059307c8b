"""Adaptive-threshold contourlet denoising next to the three wavelet
baselines (hard, soft, local Wiener).

The contourlet threshold T = scale * (3/4) N sigma_n^2 / sigma_g comes in
three readings of N; the literal one produces thresholds in the 10^4
range on a 256^2 image and so zeroes every directional coefficient
(documented behaviour, kept for fidelity).  The bayes mode is the
adaptive variant that keeps edge coefficients.

Run:  python3 demos/04_denoising.py
"""

import numpy as np

from contourlite import add_awgn, denoise_contourlet, psnr
from contourlite.phantom import make_phantom
from contourlite.wavelet import denoise_hard, denoise_soft, denoise_wiener

clean = make_phantom(256)
noisy = add_awgn(clean, 25.0, seed=0)
base = psnr(clean, noisy).psnr_db
print(f"noisy input: {base:.3f} dB\n")

print("contourlet pipeline (threshold modes):")
for mode in ("paper_literal", "per_subband", "bayes"):
    out, rep = denoise_contourlet(noisy, mode=mode, clean_reference=clean)
    kept = sum(k for k, _ in rep.subband_counts.values())
    total = kept + sum(z for _, z in rep.subband_counts.values())
    print(f"  {mode:14s}: {rep.psnr_denoised:7.3f} dB "
          f"(+{rep.psnr_denoised - base:.2f}), kept {kept}/{total} "
          f"directional coefficients, sigma_n "
          f"{np.sqrt(rep.noise.sigma_n_sq):.2f}")

print("\nwavelet baselines (db4, 3 levels, universal threshold):")
for name, fn in (("hard", denoise_hard), ("soft", denoise_soft),
                 ("wiener", denoise_wiener)):
    out, rep = fn(noisy, reference=clean)
    print(f"  {name:14s}: {rep.psnr_denoised:7.3f} dB "
          f"(+{rep.psnr_denoised - base:.2f})")

# a known noise level can be passed instead of the MAD estimate
out, rep = denoise_hard(noisy, sigma_hint=25.0, reference=clean)
print(f"\nhard with known sigma=25: {rep.psnr_denoised:.3f} dB")

# the report serialises as a flat key-value block
out, rep = denoise_contourlet(noisy, mode="bayes", clean_reference=clean)
print("\nsample report:")
print(rep.as_text())
