"""Hue/saturation utilities and the two clustering distances.

Color quantization clusters with an empirical hue/saturation distance:
both pixels are mapped to (hue, saturation) computed from squared,
blue-favoring weighted channels, and the distance is the squared circular
hue difference plus the squared difference of scaled saturations. Hint
placement uses plain Euclidean distance over (r, g, b, x, y).

The printed form of the saturation term scales only the first argument by
1.5; ``mode="literal"`` keeps that asymmetry (with the convention that the
point is the first argument and the medoid the second), while the default
``mode="symmetric"`` scales both, which makes the distance a coherent
dissimilarity for clustering.
"""

import math

import numpy as np

SAT_SCALE = 1.5

_MODES = ("symmetric", "literal")


def _check_mode(mode: str) -> tuple[float, float]:
    """Map mode name to the (point, medoid) saturation scale pair."""
    if mode == "symmetric":
        return SAT_SCALE, SAT_SCALE
    if mode == "literal":
        return SAT_SCALE, 1.0
    raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")


def get_hue(r: float, g: float, b: float) -> float:
    """Hexagonal hue of any non-negative triple, normalized to [0, 1).

    Achromatic inputs (max == min) return 0.
    """
    mx = max(r, g, b)
    mn = min(r, g, b)
    c = mx - mn
    if c == 0:
        return 0.0
    if mx == r:
        h6 = ((g - b) / c) % 6.0
    elif mx == g:
        h6 = (b - r) / c + 2.0
    else:
        h6 = (r - g) / c + 4.0
    return h6 / 6.0


def get_sat(r: float, g: float, b: float) -> float:
    """Saturation (max - min) / max of any non-negative triple; 0 for max == 0."""
    mx = max(r, g, b)
    if mx == 0:
        return 0.0
    return (mx - min(r, g, b)) / mx


def huesat_point(r: float, g: float, b: float) -> tuple[float, float]:
    """(hue, saturation) features of one pixel for the quantization distance.

    Hue comes from the squared channels. The saturation inputs
    (0.8 r^2, 0.8 g^2, b^2) are evaluated as the mathematically equal
    integer form (4 r^2, 4 g^2, 5 b^2): saturation is scale-invariant, and
    exact integer inputs keep every non-black gray at saturation exactly
    0.2 instead of a cloud of rounding neighbours.
    """
    h = get_hue(r * r, g * g, b * b)
    s = get_sat(4.0 * r * r, 4.0 * g * g, 5.0 * b * b)
    return h, s


def huesat_distance(p1, p2, mode: str = "symmetric") -> float:
    """Quantization distance between two pixels.

    Accepts anything with r, g, b attributes or 3-sequences. In literal
    mode p1 plays the point role and p2 the medoid role.
    """
    a, b = _check_mode(mode)
    h1, s1 = huesat_point(*_rgb_of(p1))
    h2, s2 = huesat_point(*_rgb_of(p2))
    dh = abs(h1 - h2)
    dh = min(dh, 1.0 - dh)
    ds = a * s1 - b * s2
    return dh * dh + ds * ds


def rgbxy_distance(p1, p2) -> float:
    """Euclidean distance over (r, g, b, x, y) with equal weights.

    Channels stay in their native [0, 255] range and coordinates in pixels.
    """
    r1, g1, b1 = _rgb_of(p1)
    r2, g2, b2 = _rgb_of(p2)
    x1, y1 = p1.x, p1.y
    x2, y2 = p2.x, p2.y
    return math.sqrt(
        (r1 - r2) ** 2 + (g1 - g2) ** 2 + (b1 - b2) ** 2 + (x1 - x2) ** 2 + (y1 - y2) ** 2
    )


def _rgb_of(p) -> tuple[float, float, float]:
    if hasattr(p, "r"):
        return p.r, p.g, p.b
    r, g, b = p[:3]
    return r, g, b


def huesat_features(rgb: np.ndarray) -> np.ndarray:
    """Vectorized :func:`huesat_point` for an (n, 3) array of channels.

    Branch order matches the scalar version (r, then g, then b wins ties)
    so scalar and vectorized paths agree bit for bit.
    """
    rgb = np.asarray(rgb, dtype=np.float64)
    r2 = rgb[:, 0] * rgb[:, 0]
    g2 = rgb[:, 1] * rgb[:, 1]
    b2 = rgb[:, 2] * rgb[:, 2]

    mx = np.maximum(r2, np.maximum(g2, b2))
    mn = np.minimum(r2, np.minimum(g2, b2))
    c = mx - mn
    safe_c = np.where(c == 0, 1.0, c)
    h6 = np.where(
        mx == r2,
        ((g2 - b2) / safe_c) % 6.0,
        np.where(mx == g2, (b2 - r2) / safe_c + 2.0, (r2 - g2) / safe_c + 4.0),
    )
    h = np.where(c == 0, 0.0, h6 / 6.0)

    sr = 4.0 * r2
    sg = 4.0 * g2
    sb = 5.0 * b2
    smx = np.maximum(sr, np.maximum(sg, sb))
    smn = np.minimum(sr, np.minimum(sg, sb))
    s = np.where(smx == 0, 0.0, (smx - smn) / np.where(smx == 0, 1.0, smx))

    return np.column_stack([h, s])


def rgbxy_features(rgb: np.ndarray, xy: np.ndarray) -> np.ndarray:
    """(n, 5) float feature rows [r, g, b, x, y] in native units."""
    rgb = np.asarray(rgb, dtype=np.float64)
    xy = np.asarray(xy, dtype=np.float64)
    return np.column_stack([rgb, xy])
