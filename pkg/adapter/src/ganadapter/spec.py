"""Training specifications and config emission.

Defaults: the aligned (pix2pix-style) model trains with ngf = ndf = 150
for 1000 epochs, the unpaired (CycleGAN-style) model with ngf = ndf = 128
for 300 epochs, both at 256x256.
"""

import json
from dataclasses import asdict, dataclass
from pathlib import Path

ALIGNED_DEFAULTS = {"ngf": 150, "ndf": 150, "epochs": 1000}
UNPAIRED_DEFAULTS = {"ngf": 128, "ndf": 128, "epochs": 300}

_KINDS = ("aligned", "unpaired")
# Directories each layout must provide before training makes sense.
_REQUIRED_SUBDIRS = {"aligned": ("train",), "unpaired": ("trainA", "trainB")}


@dataclass(frozen=True)
class TrainSpec:
    """One training run's parameters."""

    model_kind: str
    dataset_root: str
    ngf: int
    ndf: int
    epochs: int
    image_side: int = 256
    seed: int = 0

    def __post_init__(self):
        if self.model_kind not in _KINDS:
            raise ValueError(f"model_kind must be one of {_KINDS}, got {self.model_kind!r}")
        if self.ngf < 1 or self.ndf < 1:
            raise ValueError("ngf and ndf must both be >= 1")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.image_side < 1:
            raise ValueError("image_side must be >= 1")

    @classmethod
    def for_kind(cls, model_kind: str, dataset_root, **overrides) -> "TrainSpec":
        """Spec with the standard defaults for the given model kind."""
        if model_kind not in _KINDS:
            raise ValueError(f"model_kind must be one of {_KINDS}, got {model_kind!r}")
        params = dict(ALIGNED_DEFAULTS if model_kind == "aligned" else UNPAIRED_DEFAULTS)
        params.update(overrides)
        return cls(model_kind=model_kind, dataset_root=str(dataset_root), **params)


def check_layout(spec: TrainSpec) -> None:
    """Raise unless dataset_root matches the model kind's directory layout."""
    root = Path(spec.dataset_root)
    required = _REQUIRED_SUBDIRS[spec.model_kind]
    missing = [sub for sub in required if not (root / sub).is_dir()]
    if missing:
        expected = ", ".join(f"{sub}/" for sub in required)
        raise ValueError(
            f"dataset root {root} does not match the {spec.model_kind!r} layout: "
            f"expected subdirectories {expected}; missing {', '.join(missing)}"
        )


def write_config(spec: TrainSpec, out_path) -> Path:
    """Validate the dataset layout and write the run configuration.

    Pure given the spec: identical specs produce identical files.
    """
    check_layout(spec)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    config = asdict(spec)
    config["framework_model"] = "pix2pix" if spec.model_kind == "aligned" else "cycle_gan"
    out_path.write_text(json.dumps(config, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return out_path


def load_config(path) -> TrainSpec:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such config: {path}")
    raw = json.loads(path.read_text(encoding="utf-8"))
    raw.pop("framework_model", None)
    return TrainSpec(**raw)
