"""Network-input composition and output combination.

One image carries both the line art and the hints: the hint disks are
painted straight onto the line art. An optional Gaussian blur spreads the
hint colors; in that case only the hint layer is blurred and the black
lines are reasserted on top, so the drawing stays sharp. The two
generator outputs are merged with a divide blend.
"""

import numpy as np
from scipy.ndimage import gaussian_filter1d

from .hints import HintSet, render_hints
from .raster import RasterImage


def gaussian_blur(img: RasterImage, sigma: float) -> RasterImage:
    """Separable Gaussian blur, kernel radius ceil(3 sigma), clamped edges.

    All four channels are filtered in float and rounded once at the end.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    radius = int(np.ceil(3.0 * sigma))
    data = img.pixels.astype(np.float64)
    data = gaussian_filter1d(data, sigma, axis=0, mode="nearest", radius=radius)
    data = gaussian_filter1d(data, sigma, axis=1, mode="nearest", radius=radius)
    return RasterImage(np.rint(data).clip(0, 255).astype(np.uint8))


def compose_input(lineart: RasterImage, hints: HintSet, blur_sigma: float = 0.0) -> RasterImage:
    """Paint hints over binary line art, optionally through a blur.

    With blur_sigma == 0 this is exactly render_hints over the line art.
    With blur_sigma > 0 the disks are rendered on a white layer, the layer
    is blurred, and the line art's black pixels are restored on top.
    """
    if blur_sigma < 0:
        raise ValueError(f"blur_sigma must be >= 0, got {blur_sigma}")
    if blur_sigma == 0:
        return render_hints(lineart, hints)
    layer = render_hints(RasterImage.blank(lineart.width, lineart.height), hints)
    out = gaussian_blur(layer, blur_sigma)
    black = (lineart.rgb == 0).all(axis=2)
    out.pixels[black] = (0, 0, 0, 255)
    return out


def divide_blend(a: RasterImage, b: RasterImage) -> RasterImage:
    """Per-channel divide: out = min(255, round(255 * a / b)), 255 where b == 0.

    The output alpha is taken from a. Dividing an image by itself gives
    white; dividing by white is the identity.
    """
    if (a.width, a.height) != (b.width, b.height):
        raise ValueError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    num = a.rgb.astype(np.float64)
    den = b.rgb.astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.rint(255.0 * num / den)
    out_rgb = np.where(den == 0, 255.0, ratio).clip(0, 255)
    out = np.empty_like(a.pixels)
    out[:, :, :3] = out_rgb.astype(np.uint8)
    out[:, :, 3] = a.alpha
    return RasterImage(out)
