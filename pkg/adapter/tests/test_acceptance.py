"""Adapter acceptance: config defaults, CPU smoke run, byte-exact combine."""

import json
import time
from contextlib import contextmanager

from conftest import primary_cli
from ganadapter.combine import collect_and_combine
from ganadapter.runner import infer, train
from ganadapter.spec import TrainSpec, write_config


@contextmanager
def criterion(name):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL ({time.perf_counter() - start:.2f} s)")
        raise
    print(f"ACCEPTANCE {name}: PASS ({time.perf_counter() - start:.2f} s)")


def test_config_defaults(aligned_dataset, unpaired_dataset, tmp_path):
    """Aligned defaults 150/150, unpaired 128/128 with epoch budget 300."""
    with criterion("adapter-config-defaults"):
        aligned = json.loads(
            write_config(TrainSpec.for_kind("aligned", aligned_dataset), tmp_path / "a.json").read_text()
        )
        assert (aligned["ngf"], aligned["ndf"], aligned["epochs"]) == (150, 150, 1000)
        unpaired = json.loads(
            write_config(TrainSpec.for_kind("unpaired", unpaired_dataset), tmp_path / "u.json").read_text()
        )
        assert (unpaired["ngf"], unpaired["ndf"], unpaired["epochs"]) == (128, 128, 300)


def test_smoke_train_infer_and_combine(aligned_dataset, unpaired_dataset, tmp_path):
    """1 epoch at 64x64 over 4 pairs on CPU; 4 outputs; byte-exact combine."""
    with criterion("adapter-smoke-train-infer"):
        train_pairs = sorted((aligned_dataset / "train").glob("*.png"))
        assert len(train_pairs) == 4

        aligned_run = train(
            TrainSpec.for_kind("aligned", aligned_dataset, ngf=8, ndf=8, epochs=1, image_side=64),
            tmp_path / "run_aligned",
        )
        unpaired_run = train(
            TrainSpec.for_kind("unpaired", unpaired_dataset, ngf=8, ndf=8, epochs=1, image_side=64),
            tmp_path / "run_unpaired",
        )

        # infer both models over the same four training inputs
        inputs = tmp_path / "inputs"
        inputs.mkdir()
        for pair in train_pairs:
            stem = pair.stem
            src = aligned_dataset / "input" / f"{stem}.png"
            (inputs / f"{stem}.png").write_bytes(src.read_bytes())

        aligned_out = infer(aligned_run, inputs, tmp_path / "aligned_out")
        unpaired_out = infer(unpaired_run, inputs, tmp_path / "unpaired_out")
        assert len(list(aligned_out.glob("*.png"))) == 4
        assert len(list(unpaired_out.glob("*.png"))) == 4

    with criterion("adapter-combine-byte-exact"):
        combined = collect_and_combine(aligned_out, unpaired_out, tmp_path / "combined")
        assert len(combined) == 4
        for path in combined:
            manual = tmp_path / f"manual_{path.name}"
            primary_cli("combine", aligned_out / path.name, unpaired_out / path.name, manual)
            assert path.read_bytes() == manual.read_bytes()
