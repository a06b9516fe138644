"""Dataset assembly for paired and unpaired colorization training.

For every source image the full chain runs: flatten, line-art extraction,
quantization, hint placement, input composition. The aligned layout packs
input and target side by side into train/ and test/; the unpaired layout
writes inputs to trainA/ (or testA/) and targets to trainB/. A manifest of
line-delimited JSON records ties everything together.

Manifest format (one JSON object per line):
  {"kind": "header", "layout": ..., "split": ..., "seed": ..., ...}
  {"kind": "entry", "id", "source_path", "lineart_path", "input_path",
   "target_path", "split", "seed", "attribution"}
  {"kind": "skipped", "source_path", "reason"}

Entry paths except source_path are relative to the manifest's directory.
Builds are deterministic: the same sources, parameters and seed yield a
byte-identical tree at any parallelism level.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .compose import compose_input
from .errors import InputDataError
from .hints import DEFAULT_HINT_K, DEFAULT_QUANT_K, DEFAULT_RADIUS, place_hints, quantize
from .lineart import extract_lineart
from .raster import (
    RasterImage,
    chroma_key_background,
    flatten_background,
    load_png,
    resize_pad,
    save_png,
)
from .seeding import derive_seed

DEFAULT_SIDE = 256
MANIFEST_NAME = "manifest.jsonl"

_LAYOUTS = ("aligned", "unpaired")


def build_pair(input_img: RasterImage, target_img: RasterImage, side: int = DEFAULT_SIDE) -> RasterImage:
    """Side-by-side pair: left the network input, right the target.

    Both halves go through resize_pad, so the result is (2*side) x side
    and fully opaque white-flattened.
    """
    left = resize_pad(input_img, side)
    right = resize_pad(target_img, side)
    return RasterImage(np.hstack([left.pixels, right.pixels]))


@dataclass
class DatasetManifest:
    header: dict
    entries: list[dict]
    skipped: list[dict]

    @property
    def path(self) -> Path:
        return Path(self.header["manifest_path"])


def _discover_sources(src_dir: Path) -> list[Path]:
    sources = sorted(p for p in src_dir.iterdir() if p.suffix.lower() == ".png" and p.is_file())
    if not sources:
        raise InputDataError(f"no PNG sources found in {src_dir}")
    return sources


def _assign_ids(sources: list[Path]) -> list[str]:
    ids = []
    seen = set()
    for src in sources:
        base = src.stem
        candidate = base
        n = 1
        while candidate in seen:
            candidate = f"{base}_{n}"
            n += 1
        seen.add(candidate)
        ids.append(candidate)
    return ids


def _process_source(
    src: Path,
    entry_id: str,
    split_name: str,
    out_dir: Path,
    layout: str,
    seed: int,
    quant_k: int,
    hint_k: int,
    radius: int,
    blur_sigma: float,
    tolerance: float | None,
    side: int,
    mode: str,
    background_color: tuple[int, int, int] | None,
) -> dict:
    entry_seed = derive_seed(seed, src.name)
    try:
        img = load_png(src)
        if background_color is not None:
            img = chroma_key_background(img, background_color)
        lineart_img = extract_lineart(img, tolerance)
        quantized = quantize(img, quant_k, seed=entry_seed, mode=mode)
        hintset = place_hints(quantized, hint_k, seed=entry_seed, radius=radius)
        composed = compose_input(lineart_img, hintset, blur_sigma)
        target, _ = flatten_background(img)
    except Exception as exc:
        return {"kind": "skipped", "source_path": str(src), "reason": f"{type(exc).__name__}: {exc}"}

    rel_lineart = f"lineart/{entry_id}.png"
    rel_input = f"input/{entry_id}.png"
    rel_target = f"target/{entry_id}.png"
    save_png(lineart_img, out_dir / rel_lineart)
    save_png(composed, out_dir / rel_input)
    save_png(target, out_dir / rel_target)

    if layout == "aligned":
        pair = build_pair(composed, target, side)
        save_png(pair, out_dir / split_name / f"{entry_id}.png")
    else:
        a_dir = "trainA" if split_name == "train" else "testA"
        save_png(resize_pad(composed, side), out_dir / a_dir / f"{entry_id}.png")
        if split_name == "train":
            save_png(resize_pad(target, side), out_dir / "trainB" / f"{entry_id}.png")

    return {
        "kind": "entry",
        "id": entry_id,
        "source_path": str(src.resolve()),
        "lineart_path": rel_lineart,
        "input_path": rel_input,
        "target_path": rel_target,
        "split": split_name,
        "seed": entry_seed,
        "attribution": src.name,
    }


def build_dataset(
    src_dir,
    out_dir,
    layout: str = "aligned",
    split: float = 0.9,
    seed: int = 0,
    quant_k: int = DEFAULT_QUANT_K,
    hint_k: int = DEFAULT_HINT_K,
    radius: int = DEFAULT_RADIUS,
    blur_sigma: float = 0.0,
    tolerance: float | None = None,
    side: int = DEFAULT_SIDE,
    mode: str = "symmetric",
    background_color: tuple[int, int, int] | None = None,
    jobs: int = 1,
) -> DatasetManifest:
    """Run the extraction chain over a source directory and write a dataset.

    Unreadable or degenerate sources are skipped and recorded in the
    manifest with the reason. Per-image seeds derive from (seed, filename)
    so results do not depend on processing order.
    """
    if layout not in _LAYOUTS:
        raise ValueError(f"layout must be one of {_LAYOUTS}, got {layout!r}")
    if not 0.0 <= split <= 1.0:
        raise ValueError(f"split must be in [0, 1], got {split}")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    src_dir = Path(src_dir)
    out_dir = Path(out_dir)
    if not src_dir.is_dir():
        raise InputDataError(f"source directory does not exist: {src_dir}")
    sources = _discover_sources(src_dir)
    ids = _assign_ids(sources)

    # Split assignment: seeded shuffle of the id list, first chunk trains.
    order = np.random.default_rng(derive_seed(seed, "split")).permutation(len(ids))
    n_train = int(round(split * len(ids)))
    split_names = {}
    for rank, idx in enumerate(order):
        split_names[ids[idx]] = "train" if rank < n_train else "test"

    subdirs = ["lineart", "input", "target"]
    subdirs += ["train", "test"] if layout == "aligned" else ["trainA", "trainB", "testA"]
    for sub in subdirs:
        (out_dir / sub).mkdir(parents=True, exist_ok=True)

    def work(pair):
        src, entry_id = pair
        return _process_source(
            src, entry_id, split_names[entry_id], out_dir, layout, seed,
            quant_k, hint_k, radius, blur_sigma, tolerance, side, mode,
            background_color,
        )

    tasks = list(zip(sources, ids))
    if jobs == 1:
        records = [work(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(work, tasks))

    entries = sorted((r for r in records if r["kind"] == "entry"), key=lambda r: r["id"])
    skipped = sorted((r for r in records if r["kind"] == "skipped"), key=lambda r: r["source_path"])
    header = {
        "kind": "header",
        "layout": layout,
        "split": split,
        "seed": seed,
        "quant_k": quant_k,
        "hint_k": hint_k,
        "radius": radius,
        "blur_sigma": blur_sigma,
        "side": side,
        "mode": mode,
    }
    manifest_path = out_dir / MANIFEST_NAME
    with open(manifest_path, "w", encoding="utf-8") as fh:
        for record in [header, *entries, *skipped]:
            fh.write(json.dumps(record, sort_keys=True) + "\n")

    header["manifest_path"] = str(manifest_path)
    return DatasetManifest(header=header, entries=entries, skipped=skipped)


def load_manifest(manifest_path) -> DatasetManifest:
    manifest_path = Path(manifest_path)
    if not manifest_path.exists():
        raise FileNotFoundError(f"no such manifest: {manifest_path}")
    header = {}
    entries, skipped = [], []
    try:
        for line in manifest_path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            record = json.loads(line)
            kind = record.get("kind")
            if kind == "header":
                header = record
            elif kind == "entry":
                entries.append(record)
            elif kind == "skipped":
                skipped.append(record)
    except json.JSONDecodeError as exc:
        raise InputDataError(f"manifest is not valid JSONL: {exc}") from exc
    header["manifest_path"] = str(manifest_path)
    return DatasetManifest(header=header, entries=entries, skipped=skipped)


def _png_size(path: Path) -> tuple[int, int]:
    img = load_png(path)
    return img.width, img.height


def validate_manifest(manifest_path) -> list[dict]:
    """Check a built dataset against its manifest.

    Returns a machine-readable list of violations ({code, message, ...});
    an empty list means the dataset is valid.
    """
    manifest = load_manifest(manifest_path)
    root = Path(manifest_path).parent
    violations = []

    def violation(code, message, **extra):
        violations.append({"code": code, "message": message, **extra})

    if not manifest.header or "layout" not in manifest.header:
        violation("missing-header", "manifest has no header record")
        return violations

    seen_ids = set()
    for entry in manifest.entries:
        eid = entry.get("id")
        if eid in seen_ids:
            violation("duplicate-id", f"id {eid!r} appears more than once", id=eid)
        seen_ids.add(eid)
        for key in ("lineart_path", "input_path", "target_path"):
            rel = entry.get(key)
            if rel is None or not (root / rel).exists():
                violation("missing-file", f"{eid}: {key} {rel!r} not found", id=eid, path=rel)
        src = entry.get("source_path")
        if src and not Path(src).exists():
            violation("missing-file", f"{eid}: source {src!r} not found", id=eid, path=src)

    n = len(manifest.entries)
    if n:
        split = float(manifest.header.get("split", 0.9))
        n_train = sum(1 for e in manifest.entries if e.get("split") == "train")
        if abs(n_train - round(split * n)) > 1:
            violation(
                "split-fraction",
                f"{n_train}/{n} train entries vs requested split {split}",
            )

    layout = manifest.header.get("layout")
    side = int(manifest.header.get("side", DEFAULT_SIDE))
    expected = {
        "aligned": {"train": (2 * side, side), "test": (2 * side, side)},
        "unpaired": {"trainA": (side, side), "trainB": (side, side), "testA": (side, side)},
    }.get(layout, {})
    for sub, want in expected.items():
        folder = root / sub
        if not folder.is_dir():
            continue
        for png in sorted(folder.glob("*.png")):
            got = _png_size(png)
            if got != want:
                violation(
                    "bad-dimensions",
                    f"{png.relative_to(root)} is {got[0]}x{got[1]}, expected {want[0]}x{want[1]}",
                    path=str(png.relative_to(root)),
                )
    return violations
