"""Procedural creature-like test images.

Stands in for a real collected-art corpus, which is not distributable.
Each fixture is a 256x256 RGBA PNG: a smooth random blob body with a few
flat-colored patches, a black outline of 1-3 px, and a fully transparent
background. Generation is deterministic per (seed, index).
"""

import colorsys
from pathlib import Path

import numpy as np
from scipy.ndimage import binary_erosion

from .raster import RasterImage, save_png
from .seeding import derive_seed

SIDE = 256
_CENTER = SIDE / 2.0


def _polar_blob(rng, cx: float, cy: float, base_radius: float, wobble: float) -> np.ndarray:
    """Boolean mask of a smooth closed blob around (cx, cy)."""
    yy, xx = np.mgrid[0:SIDE, 0:SIDE]
    dx = xx - cx
    dy = yy - cy
    theta = np.arctan2(dy, dx)
    radius = np.full_like(theta, 1.0)
    for harmonic in (2, 3, 4):
        amp = wobble * rng.uniform(0.3, 1.0) / harmonic
        phase = rng.uniform(0, 2 * np.pi)
        radius += amp * np.sin(harmonic * theta + phase)
    return dx * dx + dy * dy <= (base_radius * radius) ** 2


def _palette(rng, n: int) -> list[tuple[int, int, int]]:
    """n distinct, saturated flat colors with evenly spread hues."""
    offset = rng.uniform(0, 1)
    colors = []
    for i in range(n):
        h = (offset + i / n + rng.uniform(-0.02, 0.02)) % 1.0
        s = rng.uniform(0.55, 0.95)
        v = rng.uniform(0.55, 0.95)
        rgb = tuple(int(round(255 * c)) for c in colorsys.hsv_to_rgb(h, s, v))
        colors.append(rgb)
    if len({c for c in colors}) < n:  # hue jitter collision, nudge values
        colors = [(r, g, min(255, b + i)) for i, (r, g, b) in enumerate(colors)]
    return colors


def make_fixture(seed: int, index: int) -> RasterImage:
    """One deterministic creature-like image."""
    rng = np.random.default_rng(derive_seed(seed, index, "fixture"))
    n_colors = int(rng.integers(3, 9))
    outline_px = int(rng.integers(1, 4))
    colors = _palette(rng, n_colors)

    body = _polar_blob(rng, _CENTER, _CENTER, rng.uniform(85, 100), 0.18)
    px = np.zeros((SIDE, SIDE, 4), dtype=np.uint8)
    px[body] = (*colors[0], 255)

    # Patches sit on a ring well inside the body so the outline never
    # swallows them and they stay pairwise disjoint.
    n_patches = n_colors - 1
    if n_patches:
        ring = 35.0
        spacing = 2 * ring * np.sin(np.pi / max(n_patches, 1)) if n_patches > 1 else 60.0
        max_patch = min(14.0, spacing / 2.0 - 2.0)
        angle0 = rng.uniform(0, 2 * np.pi)
        for i in range(n_patches):
            angle = angle0 + 2 * np.pi * i / n_patches
            pcx = _CENTER + ring * np.cos(angle)
            pcy = _CENTER + ring * np.sin(angle)
            pradius = rng.uniform(max(7.0, max_patch - 4.0), max_patch)
            patch = _polar_blob(rng, pcx, pcy, pradius, 0.25) & body
            px[patch] = (*colors[i + 1], 255)
            rim = patch & ~binary_erosion(patch, iterations=max(1, outline_px - 1))
            px[rim] = (0, 0, 0, 255)

    rim = body & ~binary_erosion(body, iterations=outline_px)
    px[rim] = (0, 0, 0, 255)
    return RasterImage(px)


def generate_fixtures(out_dir, count: int, seed: int = 0) -> list[Path]:
    """Write ``count`` fixture PNGs under out_dir; returns their paths."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for i in range(count):
        path = out_dir / f"fixture_{i:03d}.png"
        save_png(make_fixture(seed, i), path)
        paths.append(path)
    return paths
