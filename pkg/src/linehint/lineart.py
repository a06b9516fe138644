"""Adaptive-threshold extraction of line art from a colorized image.

The threshold level is picked from the image's own gray histogram: take
the count-weighted mean gray level m, then the highest present level v
with ``v * tolerance < m``, and binarize at v (levels <= v become black).
A larger tolerance therefore selects a darker cutoff. When the caller
gives no tolerance, one is derived from how much of the canvas the
character covers: small characters tend to have thicker lines, so they
get a higher tolerance.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputDataError
from .raster import RasterImage, flatten_background, histogram, to_grayscale, GrayHistogram

TOLERANCE_MIN = 1.0
TOLERANCE_MAX = 1.5


@dataclass(frozen=True)
class ThresholdDecision:
    """Outcome of threshold selection.

    ``degenerate`` is set when no present level satisfied the cutoff
    inequality and v fell back to the darkest present level; callers
    treat that as "no line content".
    """

    m: float
    v: int
    tolerance: float
    character_fraction: float = 1.0
    degenerate: bool = False


def weighted_mean_level(hist: GrayHistogram) -> float:
    """Count-weighted mean gray level of the histogram."""
    total = hist.total
    if total == 0:
        raise ValueError("empty histogram")
    levels = np.arange(256, dtype=np.float64)
    return float((levels * hist.counts).sum() / total)


def select_threshold(
    hist: GrayHistogram, tolerance: float, character_fraction: float = 1.0
) -> ThresholdDecision:
    """Pick the highest present gray level v with ``v * tolerance < m``.

    Falls back to the darkest present level (flagged degenerate) when no
    level qualifies, which happens for uniform or near-uniform images.
    """
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    m = weighted_mean_level(hist)
    levels = hist.levels()
    qualifying = levels[levels * tolerance < m]
    if qualifying.size:
        return ThresholdDecision(m, int(qualifying[-1]), tolerance, character_fraction)
    return ThresholdDecision(m, int(levels[0]), tolerance, character_fraction, degenerate=True)


def adaptive_tolerance(character_pixels: int, total_pixels: int) -> float:
    """Tolerance from character coverage: 1.0 (full canvas) up to 1.5 (empty)."""
    if total_pixels <= 0:
        raise ValueError("total_pixels must be positive")
    if not 0 <= character_pixels <= total_pixels:
        raise ValueError("character_pixels out of range")
    f = character_pixels / total_pixels
    return float(np.clip(1.0 + 0.5 * (1.0 - f), TOLERANCE_MIN, TOLERANCE_MAX))


def threshold_decision_for(
    img: RasterImage, tolerance: float | None = None, alpha_threshold: int = 1
) -> ThresholdDecision:
    """Flatten, gray and histogram the character pixels, then select v."""
    flat, _ = flatten_background(img)
    gray = to_grayscale(flat)
    # Character pixels are judged on the original alpha, not the flattened one.
    carrier = RasterImage(gray.pixels.copy())
    carrier.pixels[:, :, 3] = img.alpha
    hist = histogram(carrier, alpha_threshold)
    if hist.total == 0:
        raise InputDataError(
            "no character pixels above the alpha threshold; nothing to extract"
        )
    total = img.width * img.height
    if tolerance is None:
        tolerance = adaptive_tolerance(hist.total, total)
    decision = select_threshold(hist, tolerance, character_fraction=hist.total / total)
    return decision


def extract_lineart(
    img: RasterImage, tolerance: float | None = None, alpha_threshold: int = 1
) -> RasterImage:
    """Binarize an image into black line art on white.

    Gray levels <= v turn black, everything else white; background
    (sub-threshold alpha) is forced white. A degenerate threshold
    decision yields an all-white page rather than a solid black one.
    Output is fully opaque and contains only pure black and pure white.
    """
    decision = threshold_decision_for(img, tolerance, alpha_threshold)
    flat, _ = flatten_background(img)
    gray = to_grayscale(flat).pixels[:, :, 0]
    background = img.alpha < alpha_threshold
    out = RasterImage.blank(img.width, img.height)
    if not decision.degenerate:
        black = (gray <= decision.v) & ~background
        out.pixels[black] = (0, 0, 0, 255)
    return out
