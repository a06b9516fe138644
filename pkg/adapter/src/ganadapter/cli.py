"""Command-line entry point for the adapter."""

import functools
import logging
import sys
from pathlib import Path

import click

from .combine import collect_and_combine
from .runner import AdapterError, framework_dir, infer, train
from .spec import TrainSpec, load_config, write_config

logger = logging.getLogger("ganadapter")


def guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except (AdapterError, FileNotFoundError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


@click.group()
@click.option("--verbosity", type=click.IntRange(0, 2), default=1, show_default=True)
def main(verbosity):
    """Orchestrate external framework training runs and collect results."""
    level = [logging.WARNING, logging.INFO, logging.DEBUG][verbosity]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@main.command("write-config")
@click.argument("dataset_root", type=click.Path(path_type=Path))
@click.argument("out_path", type=click.Path(path_type=Path))
@click.option("--model-kind", type=click.Choice(["aligned", "unpaired"]), required=True)
@click.option("--ngf", type=click.IntRange(min=1), default=None, help="Default: 150 aligned, 128 unpaired.")
@click.option("--ndf", type=click.IntRange(min=1), default=None, help="Default: 150 aligned, 128 unpaired.")
@click.option("--epochs", type=click.IntRange(min=1), default=None, help="Default: 1000 aligned, 300 unpaired.")
@click.option("--image-side", type=click.IntRange(min=1), default=256, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@guarded
def write_config_cmd(dataset_root, out_path, model_kind, ngf, ndf, epochs, image_side, seed):
    """Emit the framework option set for one training run."""
    overrides = {k: v for k, v in (("ngf", ngf), ("ndf", ndf), ("epochs", epochs)) if v is not None}
    spec = TrainSpec.for_kind(model_kind, dataset_root, image_side=image_side, seed=seed, **overrides)
    path = write_config(spec, out_path)
    click.echo(f"wrote {path}")


@main.command("train")
@click.argument("config_path", type=click.Path(path_type=Path))
@click.argument("run_dir", type=click.Path(path_type=Path))
@guarded
def train_cmd(config_path, run_dir):
    """Train per CONFIG_PATH; artifacts land under RUN_DIR."""
    spec = load_config(config_path)
    click.echo(f"framework: {framework_dir()}")
    train(spec, run_dir)
    click.echo(f"run complete: {run_dir}")


@main.command("infer")
@click.argument("run_dir", type=click.Path(path_type=Path))
@click.argument("inputs_dir", type=click.Path(path_type=Path))
@click.option("--out", "outputs_dir", type=click.Path(path_type=Path), default=None,
              help="Default: RUN_DIR/outputs.")
@guarded
def infer_cmd(run_dir, inputs_dir, outputs_dir):
    """Generate one output per input PNG using a trained run."""
    out = infer(run_dir, inputs_dir, outputs_dir)
    click.echo(f"outputs: {out}")


@main.command("combine-all")
@click.argument("aligned_dir", type=click.Path(path_type=Path))
@click.argument("unpaired_dir", type=click.Path(path_type=Path))
@click.argument("out_dir", type=click.Path(path_type=Path))
@guarded
def combine_all_cmd(aligned_dir, unpaired_dir, out_dir):
    """Divide-blend matching stems via the primary toolkit."""
    written = collect_and_combine(aligned_dir, unpaired_dir, out_dir)
    click.echo(f"combined {len(written)} pairs into {out_dir}")


if __name__ == "__main__":
    main()
