"""Launching framework training and inference runs.

The external framework lives wherever GAN_FRAMEWORK_DIR points; it must
provide ``train.py`` and ``test.py`` accepting the conventional
image-to-image translation options (--dataroot, --name, --model,
--checkpoints_dir, --ngf, --ndf, --n_epochs, --load_size, --crop_size,
--gpu_ids; test.py additionally --results_dir, and writes one
``<stem>.png`` per input). When the variable is unset, the bundled smoke
framework (a tiny CPU model with the same CLI surface) is used, which
keeps end-to-end tests hermetic.

Run directory layout:

    run/
      config.json    # the TrainSpec that produced the run
      checkpoints/   # framework checkpoints, one subdirectory per run name
      logs/          # train.log, infer.log
      outputs/       # inference results (one PNG per input)
"""

import logging
import os
import subprocess
import sys
from pathlib import Path

from .spec import TrainSpec, check_layout, load_config, write_config

FRAMEWORK_ENV = "GAN_FRAMEWORK_DIR"
RUN_NAME = "run"
_LOG_TAIL_LINES = 25

logger = logging.getLogger("ganadapter")


class AdapterError(Exception):
    """A framework invocation failed; the message carries the log tail."""


class CheckpointNotFoundError(AdapterError):
    """Inference was requested before any checkpoint exists."""


def framework_dir() -> Path:
    """Directory of the framework scripts (env override or bundled smoke)."""
    override = os.environ.get(FRAMEWORK_ENV, "").strip()
    if override:
        path = Path(override)
        if not (path / "train.py").exists() or not (path / "test.py").exists():
            raise AdapterError(
                f"{FRAMEWORK_ENV}={path} must contain train.py and test.py"
            )
        return path
    return Path(__file__).parent / "smoke_framework"


def _run_script(script: Path, args: list[str], log_path: Path, what: str) -> None:
    command = [sys.executable, str(script), *args]
    log_path.parent.mkdir(parents=True, exist_ok=True)
    with open(log_path, "w", encoding="utf-8") as log:
        log.write("$ " + " ".join(command) + "\n")
        log.flush()
        proc = subprocess.run(command, stdout=log, stderr=subprocess.STDOUT)
    if proc.returncode != 0:
        tail = "".join(log_path.read_text(encoding="utf-8").splitlines(keepends=True)[-_LOG_TAIL_LINES:])
        raise AdapterError(
            f"{what} failed with exit code {proc.returncode}; log tail from {log_path}:\n{tail}"
        )


def _common_args(spec: TrainSpec) -> list[str]:
    model = "pix2pix" if spec.model_kind == "aligned" else "cycle_gan"
    return [
        "--name", RUN_NAME,
        "--model", model,
        "--ngf", str(spec.ngf),
        "--ndf", str(spec.ndf),
        "--load_size", str(spec.image_side),
        "--crop_size", str(spec.image_side),
        "--gpu_ids", "-1",
    ]


def train(spec: TrainSpec, run_dir) -> Path:
    """Launch one training run; returns the run directory (the run handle)."""
    check_layout(spec)
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    write_config(spec, run_dir / "config.json")
    checkpoints = run_dir / "checkpoints"
    checkpoints.mkdir(exist_ok=True)
    args = [
        "--dataroot", str(spec.dataset_root),
        "--checkpoints_dir", str(checkpoints),
        "--n_epochs", str(spec.epochs),
        *_common_args(spec),
    ]
    logger.info("training %s model in %s", spec.model_kind, run_dir)
    _run_script(framework_dir() / "train.py", args, run_dir / "logs" / "train.log", "training")
    return run_dir


def infer(run_dir, inputs_dir, outputs_dir=None) -> Path:
    """Run inference for an existing run over a directory of input PNGs.

    Fails up front (producing no partial outputs) when the run has no
    checkpoints; verifies one output per input afterwards.
    """
    run_dir = Path(run_dir)
    inputs_dir = Path(inputs_dir)
    spec = load_config(run_dir / "config.json")
    checkpoints = run_dir / "checkpoints" / RUN_NAME
    if not checkpoints.is_dir() or not any(checkpoints.iterdir()):
        raise CheckpointNotFoundError(
            f"no checkpoint under {checkpoints}; train the run first"
        )
    inputs = sorted(inputs_dir.glob("*.png"))
    if not inputs:
        raise AdapterError(f"no PNG inputs in {inputs_dir}")
    outputs_dir = Path(outputs_dir) if outputs_dir else run_dir / "outputs"
    outputs_dir.mkdir(parents=True, exist_ok=True)
    args = [
        "--dataroot", str(inputs_dir),
        "--checkpoints_dir", str(run_dir / "checkpoints"),
        "--results_dir", str(outputs_dir),
        *_common_args(spec),
    ]
    _run_script(framework_dir() / "test.py", args, run_dir / "logs" / "infer.log", "inference")
    missing = [p.name for p in inputs if not (outputs_dir / p.name).exists()]
    if missing:
        raise AdapterError(f"inference produced no output for: {', '.join(missing)}")
    return outputs_dir
