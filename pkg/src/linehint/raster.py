"""Image representation, color conversion, histograms, geometry and PNG I/O.

Everything downstream works on :class:`RasterImage`, an 8-bit RGBA pixel
grid. All operations are pure: they never mutate their inputs and are safe
to call concurrently from a batch driver.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import InputDataError, MalformedImageError

# BT.601 luma weights, the common grayscale convention.
_LUMA_R = 0.299
_LUMA_G = 0.587
_LUMA_B = 0.114


@dataclass
class RasterImage:
    """8-bit RGBA raster, ``pixels`` shaped (height, width, 4), row-major."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 3 or arr.shape[2] != 4 or arr.dtype != np.uint8:
            raise ValueError(
                f"pixels must be a (h, w, 4) uint8 array, got {arr.shape} {arr.dtype}"
            )
        self.pixels = arr

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def rgb(self) -> np.ndarray:
        return self.pixels[:, :, :3]

    @property
    def alpha(self) -> np.ndarray:
        return self.pixels[:, :, 3]

    def copy(self) -> "RasterImage":
        return RasterImage(self.pixels.copy())

    @classmethod
    def blank(cls, width: int, height: int, color=(255, 255, 255, 255)) -> "RasterImage":
        """New image of the given size filled with one RGBA color."""
        if width < 1 or height < 1:
            raise ValueError(f"invalid image size {width}x{height}")
        px = np.empty((height, width, 4), dtype=np.uint8)
        px[:, :] = np.asarray(color, dtype=np.uint8)
        return cls(px)

    def __eq__(self, other) -> bool:
        return isinstance(other, RasterImage) and np.array_equal(self.pixels, other.pixels)


@dataclass
class GrayHistogram:
    """Occurrence counts for the 256 gray levels of a counted pixel set."""

    counts: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=np.int64)
        if arr.shape != (256,) or (arr < 0).any():
            raise ValueError("counts must be 256 non-negative integers")
        self.counts = arr

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def levels(self) -> np.ndarray:
        """Gray levels present (nonzero count), ascending."""
        return np.nonzero(self.counts)[0]


@dataclass(frozen=True)
class PixelSample:
    """A single located color sample."""

    x: int
    y: int
    r: int
    g: int
    b: int


def to_grayscale(img: RasterImage) -> RasterImage:
    """Convert to grayscale, replicating the single effective channel.

    Each output level is ``round(0.299 r + 0.587 g + 0.114 b)``; alpha is
    preserved. Idempotent: gray pixels map to themselves.
    """
    rgb = img.rgb.astype(np.float64)
    y = np.rint(_LUMA_R * rgb[:, :, 0] + _LUMA_G * rgb[:, :, 1] + _LUMA_B * rgb[:, :, 2])
    out = np.empty_like(img.pixels)
    out[:, :, 0] = out[:, :, 1] = out[:, :, 2] = y.astype(np.uint8)
    out[:, :, 3] = img.alpha
    return RasterImage(out)


def is_grayscale(img: RasterImage) -> bool:
    px = img.pixels
    return bool(
        np.array_equal(px[:, :, 0], px[:, :, 1]) and np.array_equal(px[:, :, 1], px[:, :, 2])
    )


def histogram(img: RasterImage, alpha_threshold: int = 1) -> GrayHistogram:
    """Count gray levels over pixels whose alpha passes the threshold.

    Pixels with ``alpha < alpha_threshold`` are treated as background
    information and excluded. The input must already be grayscale.
    """
    if not is_grayscale(img):
        raise ValueError("histogram requires a grayscale image (r == g == b per pixel)")
    mask = img.alpha >= alpha_threshold
    counts = np.bincount(img.pixels[:, :, 0][mask].ravel(), minlength=256)
    return GrayHistogram(counts)


def flatten_background(img: RasterImage) -> tuple[RasterImage, np.ndarray]:
    """Alpha-composite over opaque white.

    Returns the fully opaque result together with the background mask
    (positions where alpha == 0), which downstream steps use to keep
    skipping what used to be transparent.
    """
    a = img.alpha.astype(np.float64)[:, :, None] / 255.0
    rgb = np.rint(img.rgb.astype(np.float64) * a + 255.0 * (1.0 - a))
    out = np.empty_like(img.pixels)
    out[:, :, :3] = rgb.astype(np.uint8)
    out[:, :, 3] = 255
    return RasterImage(out), img.alpha == 0


def resize_pad(img: RasterImage, side: int) -> RasterImage:
    """Letterbox onto a white square, then scale to ``side`` x ``side``.

    The image is composited over an opaque white square canvas of size
    max(width, height) (centered), then resampled bilinearly. Content
    aspect ratio is preserved; output is fully opaque.
    """
    if side < 1:
        raise ValueError(f"side must be positive, got {side}")
    flat, _ = flatten_background(img)
    w, h = img.width, img.height
    canvas_side = max(w, h)
    if w == h:
        canvas = flat
    else:
        canvas = RasterImage.blank(canvas_side, canvas_side)
        x0 = (canvas_side - w) // 2
        y0 = (canvas_side - h) // 2
        canvas.pixels[y0 : y0 + h, x0 : x0 + w] = flat.pixels
    if canvas_side == side:
        return canvas
    pil = Image.fromarray(canvas.pixels, mode="RGBA")
    scaled = pil.resize((side, side), Image.BILINEAR)
    return RasterImage(np.asarray(scaled, dtype=np.uint8))


def load_png(path) -> RasterImage:
    """Load any PIL-readable image as 8-bit RGBA.

    16-bit sources are depth-reduced to 8 bits. Raises FileNotFoundError
    for missing files and MalformedImageError for undecodable ones.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such image: {path}")
    try:
        with Image.open(path) as pil:
            pil.load()
            if pil.mode in ("I", "I;16", "I;16L", "I;16B"):
                arr16 = np.asarray(pil, dtype=np.uint32)
                pil = Image.fromarray((arr16 >> 8).astype(np.uint8), mode="L")
            if pil.mode != "RGBA":
                pil = pil.convert("RGBA")
            return RasterImage(np.asarray(pil, dtype=np.uint8))
    except UnidentifiedImageError as exc:
        raise MalformedImageError(f"cannot decode image: {path}") from exc
    except OSError as exc:
        raise MalformedImageError(f"cannot read image: {path}: {exc}") from exc


def save_png(img: RasterImage, path) -> None:
    """Write as RGBA PNG. Round-trips losslessly through :func:`load_png`."""
    path = Path(path)
    pil = Image.fromarray(img.pixels, mode="RGBA")
    pil.save(path, format="PNG")


def require_nonempty_content(img: RasterImage) -> None:
    """Reject images without a single non-transparent pixel."""
    if not (img.alpha > 0).any():
        raise InputDataError("image is fully transparent; no content to process")


def chroma_key_background(img: RasterImage, color: tuple[int, int, int]) -> RasterImage:
    """Mark every pixel of exactly this color as background (alpha 0).

    For sources that were flattened before collection: keying their
    background color restores the transparency the rest of the pipeline
    keys background handling on.
    """
    out = img.copy()
    matches = (out.rgb == np.asarray(color, dtype=np.uint8)).all(axis=2)
    out.pixels[:, :, 3][matches] = 0
    return out


def parse_color(text: str) -> tuple[int, int, int]:
    """Parse an RRGGBB (optionally #-prefixed) hex color."""
    raw = text.strip().lstrip("#")
    if len(raw) != 6:
        raise ValueError(f"expected an RRGGBB hex color, got {text!r}")
    try:
        return tuple(int(raw[i : i + 2], 16) for i in (0, 2, 4))
    except ValueError as exc:
        raise ValueError(f"expected an RRGGBB hex color, got {text!r}") from exc
