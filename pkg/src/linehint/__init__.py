"""Deterministic tooling for line-art colorization datasets.

Extracts line art from colorized creature images, derives circular color
hints by two-phase k-medoid clustering, composes single network-input
images, assembles aligned/unpaired training datasets and divide-blends
two generator outputs into a final colorization.
"""

from ._kernels import BACKEND_NAME
from .cluster import ClusterModel, ColorPoint, kmedoid
from .colors import get_hue, get_sat, huesat_distance, rgbxy_distance
from .compose import compose_input, divide_blend, gaussian_blur
from .dataset import build_dataset, build_pair, validate_manifest
from .fixtures import generate_fixtures
from .hints import Hint, HintSet, load_hints, place_hints, quantize, render_hints, save_hints
from .lineart import (
    ThresholdDecision,
    adaptive_tolerance,
    extract_lineart,
    select_threshold,
    weighted_mean_level,
)
from .raster import (
    GrayHistogram,
    PixelSample,
    RasterImage,
    flatten_background,
    histogram,
    load_png,
    resize_pad,
    save_png,
    to_grayscale,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "ClusterModel",
    "ColorPoint",
    "GrayHistogram",
    "Hint",
    "HintSet",
    "PixelSample",
    "RasterImage",
    "ThresholdDecision",
    "adaptive_tolerance",
    "build_dataset",
    "build_pair",
    "compose_input",
    "divide_blend",
    "extract_lineart",
    "flatten_background",
    "gaussian_blur",
    "generate_fixtures",
    "get_hue",
    "get_sat",
    "histogram",
    "huesat_distance",
    "kmedoid",
    "load_hints",
    "load_png",
    "place_hints",
    "quantize",
    "render_hints",
    "resize_pad",
    "rgbxy_distance",
    "save_hints",
    "save_png",
    "select_threshold",
    "to_grayscale",
    "validate_manifest",
    "weighted_mean_level",
]
