"""Color quantization and automatic hint extraction.

Two clustering passes: the first groups the image's colors with the
hue/saturation distance and recolors every pixel with its cluster's
medoid (position is ignored, so pixels are deduplicated by color first
and carried as weighted points). The second clusters the quantized
pixels in joint color-position space with plain Euclidean distance,
yielding spatially spread, color-representative hint locations. Each
final medoid becomes one circular hint.
"""

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cluster import ClusterModel, ColorPoint, kmedoid
from .errors import InputDataError
from .raster import RasterImage, require_nonempty_content
from .seeding import derive_seed

DEFAULT_QUANT_K = 35
DEFAULT_HINT_K = 10
DEFAULT_RADIUS = 15
# Point budget for the placement pass; larger images are subsampled.
DEFAULT_POINT_BUDGET = 20_000


@dataclass(frozen=True)
class Hint:
    """One circular color hint."""

    x: int
    y: int
    radius: int
    color: tuple[int, int, int]

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError(f"hint radius must be >= 1, got {self.radius}")


@dataclass
class HintSet:
    hints: list[Hint]

    def __len__(self) -> int:
        return len(self.hints)

    def __iter__(self):
        return iter(self.hints)


def _content_mask(img: RasterImage) -> np.ndarray:
    return img.alpha > 0


def quantize(
    img: RasterImage,
    k: int = DEFAULT_QUANT_K,
    seed: int = 0,
    mode: str = "symmetric",
) -> RasterImage:
    """Reduce the palette to at most k colors, all taken from the input.

    Transparent pixels are untouched; every other pixel is recolored with
    its cluster medoid. Deduplicating by color before clustering is exact
    here because the distance never looks at position.
    """
    require_nonempty_content(img)
    mask = _content_mask(img)
    rgb = img.rgb[mask]
    packed = (
        rgb[:, 0].astype(np.uint32) << 16
        | rgb[:, 1].astype(np.uint32) << 8
        | rgb[:, 2].astype(np.uint32)
    )
    unique, first_pos, inverse, counts = np.unique(
        packed, return_index=True, return_inverse=True, return_counts=True
    )
    # Restore scan order so index tie-breaks mean first appearance.
    scan_order = np.argsort(first_pos)
    unique = unique[scan_order]
    counts = counts[scan_order]
    remap = np.empty_like(scan_order)
    remap[scan_order] = np.arange(len(scan_order))
    inverse = remap[inverse]

    ys, xs = np.nonzero(mask)
    first_pos = first_pos[scan_order]
    points = [
        ColorPoint(
            x=int(xs[pos]),
            y=int(ys[pos]),
            r=int(c >> 16 & 0xFF),
            g=int(c >> 8 & 0xFF),
            b=int(c & 0xFF),
            weight=int(w),
        )
        for c, w, pos in zip(unique, counts, first_pos)
    ]
    model = kmedoid(points, k, metric="huesat", seed=seed, mode=mode)
    palette = np.array([m.rgb for m in model.medoids], dtype=np.uint8)
    out = img.copy()
    out.pixels[:, :, :3][mask] = palette[model.assignments[inverse]]
    return out


def place_hints(
    quantized: RasterImage,
    k: int = DEFAULT_HINT_K,
    seed: int = 0,
    radius: int = DEFAULT_RADIUS,
    point_budget: int = DEFAULT_POINT_BUDGET,
) -> HintSet:
    """Pick min(k, distinct pixels) hint spots from a quantized image.

    Clusters every non-transparent pixel as (r, g, b, x, y) with equal
    weights; each final medoid, which is an actual pixel, becomes a hint
    of the given radius. Instances beyond point_budget are clustered on a
    seeded uniform subsample, then medoids are snapped to the nearest
    pixel over the full set.
    """
    require_nonempty_content(quantized)
    model = placement_model(quantized, k, seed=seed, point_budget=point_budget)
    hints = [Hint(x=m.x, y=m.y, radius=radius, color=m.rgb) for m in model.medoids]
    return HintSet(hints)


def placement_model(
    quantized: RasterImage,
    k: int = DEFAULT_HINT_K,
    seed: int = 0,
    point_budget: int = DEFAULT_POINT_BUDGET,
) -> ClusterModel:
    """The placement-pass cluster model (exposed for inspection/tests)."""
    require_nonempty_content(quantized)
    mask = _content_mask(quantized)
    ys, xs = np.nonzero(mask)
    rgb = quantized.rgb[mask]
    n = len(xs)
    if n > point_budget:
        rng = np.random.default_rng(derive_seed(seed, "placement-subsample"))
        keep = np.sort(rng.choice(n, size=point_budget, replace=False))
        xs, ys, rgb = xs[keep], ys[keep], rgb[keep]
    points = [
        ColorPoint(x=int(x), y=int(y), r=int(c[0]), g=int(c[1]), b=int(c[2]))
        for x, y, c in zip(xs, ys, rgb)
    ]
    return kmedoid(points, k, metric="rgbxy", seed=seed)


def render_hints(canvas: RasterImage, hints: HintSet) -> RasterImage:
    """Paint filled opaque disks over a copy of the canvas, in hint order.

    Disk membership is Euclidean with inclusive boundary. Later hints
    overdraw earlier ones. Centers must lie within the canvas; disks are
    clipped at the edges.
    """
    out = canvas.copy()
    h, w = out.height, out.width
    for hint in hints:
        if not (0 <= hint.x < w and 0 <= hint.y < h):
            raise ValueError(
                f"hint center ({hint.x}, {hint.y}) outside {w}x{h} canvas"
            )
        r = hint.radius
        x0, x1 = max(0, hint.x - r), min(w - 1, hint.x + r)
        y0, y1 = max(0, hint.y - r), min(h - 1, hint.y + r)
        yy, xx = np.mgrid[y0 : y1 + 1, x0 : x1 + 1]
        disk = (xx - hint.x) ** 2 + (yy - hint.y) ** 2 <= r * r
        block = out.pixels[y0 : y1 + 1, x0 : x1 + 1]
        block[disk] = (*hint.color, 255)
    return out


def save_hints(hints: HintSet, path) -> None:
    """Write hints as a JSON array of {x, y, radius, r, g, b} records."""
    records = [
        {"x": h.x, "y": h.y, "radius": h.radius, "r": h.color[0], "g": h.color[1], "b": h.color[2]}
        for h in hints
    ]
    Path(path).write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")


def load_hints(path) -> HintSet:
    """Read a hint file (same schema accepted for manually authored hints)."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such hint file: {path}")
    try:
        records = json.loads(path.read_text(encoding="utf-8"))
        hints = [
            Hint(
                x=int(rec["x"]),
                y=int(rec["y"]),
                radius=int(rec["radius"]),
                color=(int(rec["r"]), int(rec["g"]), int(rec["b"])),
            )
            for rec in records
        ]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputDataError(f"invalid hint file {path}: {exc}") from exc
    return HintSet(hints)
