"""Command-line entry point.

One command with subcommands for each pipeline stage plus an end-to-end
``pipeline`` run. Exit codes: 0 success, 2 bad arguments, 3 missing or
unusable input, 4 internal failure. All subcommands are deterministic
under fixed flags and seed.
"""

import functools
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from .compose import compose_input, divide_blend
from .dataset import build_dataset, validate_manifest
from .errors import InputDataError
from .fixtures import generate_fixtures
from .hints import (
    DEFAULT_HINT_K,
    DEFAULT_QUANT_K,
    DEFAULT_RADIUS,
    load_hints,
    place_hints,
    quantize,
    render_hints,
    save_hints,
)
from .lineart import extract_lineart
from .raster import chroma_key_background, load_png, parse_color, save_png

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4

logger = logging.getLogger("linehint")

_INPUT_ERRORS = (FileNotFoundError, PermissionError, IsADirectoryError, InputDataError, OSError)


@dataclass
class PipelineConfig:
    """Knobs for one end-to-end run over a single image."""

    tolerance: float | None = None
    quant_k: int = DEFAULT_QUANT_K
    hint_k: int = DEFAULT_HINT_K
    radius: int = DEFAULT_RADIUS
    blur_sigma: float = 0.0
    seed: int = 0
    huesat_mode: str = "symmetric"
    alpha_threshold: int = 1
    background_color: tuple[int, int, int] | None = None
    out_dir: Path = field(default_factory=lambda: Path("."))

    def __post_init__(self):
        if self.quant_k < 1 or self.hint_k < 1 or self.radius < 1:
            raise ValueError("quant_k, hint_k and radius must all be >= 1")
        if self.blur_sigma < 0:
            raise ValueError("blur_sigma must be >= 0")


def run_pipeline(config: PipelineConfig, input_path) -> dict[str, Path]:
    """lineart -> quantize -> hints -> compose over one image.

    Writes lineart.png, quantized.png, hints.json and composed.png under
    config.out_dir and returns their paths.
    """
    img = _load_input(input_path, config.background_color)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "lineart": out / "lineart.png",
        "quantized": out / "quantized.png",
        "hints": out / "hints.json",
        "composed": out / "composed.png",
    }
    lineart_img = extract_lineart(img, config.tolerance, config.alpha_threshold)
    save_png(lineart_img, paths["lineart"])
    logger.info("lineart -> %s", paths["lineart"])
    quantized = quantize(img, config.quant_k, seed=config.seed, mode=config.huesat_mode)
    save_png(quantized, paths["quantized"])
    logger.info("quantized -> %s", paths["quantized"])
    hintset = place_hints(quantized, config.hint_k, seed=config.seed, radius=config.radius)
    save_hints(hintset, paths["hints"])
    logger.info("%d hints -> %s", len(hintset), paths["hints"])
    composed = compose_input(lineart_img, hintset, config.blur_sigma)
    save_png(composed, paths["composed"])
    logger.info("composed -> %s", paths["composed"])
    return paths


def _color_option(fn):
    def validate(ctx, param, value):
        if value is None:
            return None
        try:
            return parse_color(value)
        except ValueError as exc:
            raise click.BadParameter(str(exc))

    return click.option(
        "--background-color",
        type=str,
        default=None,
        callback=validate,
        help="Treat pixels of this RRGGBB color as background (for pre-flattened sources).",
    )(fn)


def _load_input(path, background_color=None):
    img = load_png(path)
    if background_color is not None:
        img = chroma_key_background(img, background_color)
    return img


def guarded(fn):
    """Map exceptions onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except _INPUT_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except Exception as exc:
            click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_INTERNAL)

    return wrapper


@click.group()
@click.option("--seed", type=int, default=0, show_default=True, help="Default seed for subcommands.")
@click.option(
    "--verbosity",
    type=click.IntRange(0, 2),
    default=0,
    show_default=True,
    help="0 warnings, 1 progress, 2 debug.",
)
@click.pass_context
def main(ctx, seed, verbosity):
    """Line-art extraction, automatic color hints and dataset tooling."""
    level = [logging.WARNING, logging.INFO, logging.DEBUG][verbosity]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = {"seed": seed}


def _seed_of(ctx, seed):
    return ctx.obj["seed"] if seed is None else seed


@main.command()
@click.argument("input_path", type=click.Path(path_type=Path))
@click.argument("output_path", type=click.Path(path_type=Path))
@click.option(
    "--tolerance",
    type=click.FloatRange(0, min_open=True),
    default=None,
    help="Threshold tolerance; omitted means adaptive from character coverage.",
)
@click.option(
    "--alpha-threshold",
    type=click.IntRange(0, 255),
    default=1,
    show_default=True,
    help="Minimum alpha for a pixel to count as character rather than background.",
)
@_color_option
@guarded
def lineart(input_path, output_path, tolerance, alpha_threshold, background_color):
    """Extract binary line art from a colorized image."""
    img = _load_input(input_path, background_color)
    save_png(extract_lineart(img, tolerance, alpha_threshold), output_path)


@main.command()
@click.argument("input_path", type=click.Path(path_type=Path))
@click.option("--quant-k", type=click.IntRange(min=1), default=DEFAULT_QUANT_K, show_default=True)
@click.option("--hint-k", type=click.IntRange(min=1), default=DEFAULT_HINT_K, show_default=True)
@click.option("--radius", type=click.IntRange(min=1), default=DEFAULT_RADIUS, show_default=True)
@click.option("--seed", type=int, default=None, help="Overrides the global --seed.")
@click.option(
    "--huesat-mode",
    type=click.Choice(["symmetric", "literal"]),
    default="symmetric",
    show_default=True,
    help="Saturation scaling in the quantization distance.",
)
@click.option("--out-quantized", type=click.Path(path_type=Path), default=None)
@click.option("--out-hints", type=click.Path(path_type=Path), default=None)
@click.option("--out-overlay", type=click.Path(path_type=Path), default=None)
@_color_option
@click.pass_context
@guarded
def hints(ctx, input_path, quant_k, hint_k, radius, seed, huesat_mode, out_quantized, out_hints, out_overlay, background_color):
    """Quantize an image and extract color hints from it."""
    seed = _seed_of(ctx, seed)
    img = _load_input(input_path, background_color)
    quantized = quantize(img, quant_k, seed=seed, mode=huesat_mode)
    hintset = place_hints(quantized, hint_k, seed=seed, radius=radius)
    if out_quantized:
        save_png(quantized, out_quantized)
    if out_hints:
        save_hints(hintset, out_hints)
    if out_overlay:
        save_png(render_hints(quantized, hintset), out_overlay)
    click.echo(f"{len(hintset)} hints from {input_path}")


@main.command()
@click.argument("lineart_path", type=click.Path(path_type=Path))
@click.argument("hints_path", type=click.Path(path_type=Path))
@click.argument("output_path", type=click.Path(path_type=Path))
@click.option("--blur-sigma", type=click.FloatRange(min=0), default=0.0, show_default=True)
@guarded
def compose(lineart_path, hints_path, output_path, blur_sigma):
    """Paint a hint file over line art to build the network input."""
    img = load_png(lineart_path)
    hintset = load_hints(hints_path)
    save_png(compose_input(img, hintset, blur_sigma), output_path)


@main.command()
@click.argument("numerator_path", type=click.Path(path_type=Path))
@click.argument("denominator_path", type=click.Path(path_type=Path))
@click.argument("output_path", type=click.Path(path_type=Path))
@guarded
def combine(numerator_path, denominator_path, output_path):
    """Divide-blend the first generator output by the second."""
    a = load_png(numerator_path)
    b = load_png(denominator_path)
    save_png(divide_blend(a, b), output_path)


@main.command()
@click.argument("input_path", type=click.Path(path_type=Path))
@click.option("--out-dir", type=click.Path(path_type=Path), default=Path("."), show_default=True)
@click.option("--tolerance", type=click.FloatRange(0, min_open=True), default=None)
@click.option("--quant-k", type=click.IntRange(min=1), default=DEFAULT_QUANT_K, show_default=True)
@click.option("--hint-k", type=click.IntRange(min=1), default=DEFAULT_HINT_K, show_default=True)
@click.option("--radius", type=click.IntRange(min=1), default=DEFAULT_RADIUS, show_default=True)
@click.option("--blur-sigma", type=click.FloatRange(min=0), default=0.0, show_default=True)
@click.option("--seed", type=int, default=None, help="Overrides the global --seed.")
@click.option(
    "--huesat-mode", type=click.Choice(["symmetric", "literal"]), default="symmetric", show_default=True
)
@click.option("--alpha-threshold", type=click.IntRange(0, 255), default=1, show_default=True)
@_color_option
@click.pass_context
@guarded
def pipeline(ctx, input_path, out_dir, tolerance, quant_k, hint_k, radius, blur_sigma, seed, huesat_mode, alpha_threshold, background_color):
    """Run lineart, hints and compose end to end on one image."""
    config = PipelineConfig(
        tolerance=tolerance,
        quant_k=quant_k,
        hint_k=hint_k,
        radius=radius,
        blur_sigma=blur_sigma,
        seed=_seed_of(ctx, seed),
        huesat_mode=huesat_mode,
        alpha_threshold=alpha_threshold,
        background_color=background_color,
        out_dir=out_dir,
    )
    paths = run_pipeline(config, input_path)
    for name in ("lineart", "quantized", "hints", "composed"):
        click.echo(f"{name}: {paths[name]}")


@main.group()
def dataset():
    """Build and validate training datasets."""


@dataset.command("build")
@click.argument("src_dir", type=click.Path(path_type=Path))
@click.argument("out_dir", type=click.Path(path_type=Path))
@click.option("--layout", type=click.Choice(["aligned", "unpaired"]), default="aligned", show_default=True)
@click.option("--split", type=click.FloatRange(0, 1), default=0.9, show_default=True)
@click.option("--seed", type=int, default=None, help="Overrides the global --seed.")
@click.option("--quant-k", type=click.IntRange(min=1), default=DEFAULT_QUANT_K, show_default=True)
@click.option("--hint-k", type=click.IntRange(min=1), default=DEFAULT_HINT_K, show_default=True)
@click.option("--radius", type=click.IntRange(min=1), default=DEFAULT_RADIUS, show_default=True)
@click.option("--blur-sigma", type=click.FloatRange(min=0), default=0.0, show_default=True)
@click.option("--tolerance", type=click.FloatRange(0, min_open=True), default=None)
@click.option("--side", type=click.IntRange(min=1), default=256, show_default=True)
@click.option(
    "--huesat-mode", type=click.Choice(["symmetric", "literal"]), default="symmetric", show_default=True
)
@_color_option
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Worker threads.")
@click.pass_context
@guarded
def dataset_build(ctx, src_dir, out_dir, layout, split, seed, quant_k, hint_k, radius, blur_sigma, tolerance, side, huesat_mode, background_color, jobs):
    """Process every PNG under SRC_DIR into a dataset at OUT_DIR."""
    manifest = build_dataset(
        src_dir,
        out_dir,
        layout=layout,
        split=split,
        seed=_seed_of(ctx, seed),
        quant_k=quant_k,
        hint_k=hint_k,
        radius=radius,
        blur_sigma=blur_sigma,
        tolerance=tolerance,
        side=side,
        mode=huesat_mode,
        background_color=background_color,
        jobs=jobs,
    )
    click.echo(
        f"{len(manifest.entries)} entries, {len(manifest.skipped)} skipped -> {manifest.path}"
    )


@dataset.command("validate")
@click.argument("manifest_path", type=click.Path(path_type=Path))
@guarded
def dataset_validate(manifest_path):
    """Check a manifest and its files; prints violations as JSON."""
    violations = validate_manifest(manifest_path)
    click.echo(json.dumps(violations, indent=2))
    if violations:
        sys.exit(EXIT_INPUT)


@main.group()
def fixtures():
    """Synthetic test images."""


@fixtures.command("generate")
@click.argument("out_dir", type=click.Path(path_type=Path))
@click.option("--count", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--seed", type=int, default=None, help="Overrides the global --seed.")
@click.pass_context
@guarded
def fixtures_generate(ctx, out_dir, count, seed):
    """Generate COUNT deterministic creature-like fixture PNGs."""
    paths = generate_fixtures(out_dir, count, _seed_of(ctx, seed))
    click.echo(f"wrote {len(paths)} fixtures under {out_dir}")


if __name__ == "__main__":
    main()
