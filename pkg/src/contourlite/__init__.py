"""contourlite: contourlet / wavelet multiscale transforms and denoising."""

from .contourlet import (
    ContourletCoeffs,
    ContourletConfig,
    forward,
    inverse,
    load_coeffs,
    map_coefficients,
    save_coeffs,
)
from .denoise import (
    DenoiseReport,
    NoiseEstimate,
    ThresholdSpec,
    apply_hard_threshold,
    compute_threshold,
    denoise_contourlet,
    estimate_noise_variance,
)
from .dfb import (
    DirectionalSubbands,
    FanFilterPair,
    dfb_analysis,
    dfb_synthesis,
    quincunx_resample,
)
from .imageio import (
    PadRecord,
    add_awgn,
    as_grid,
    crop_to_record,
    load_image,
    pad_for_levels,
    quantize,
    save_image,
)
from .metrics import QualityScore, mse, psnr
from .phantom import make_phantom
from .pyramid import LpDecomposition, LpFilter, lp_analysis, lp_synthesis
from .wavelet import (
    DwtCoeffs,
    WaveletFilterPair,
    denoise_hard,
    denoise_soft,
    denoise_wiener,
    dwt2,
    idwt2,
)

__version__ = "0.1.0"
