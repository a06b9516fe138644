"""Fixture generation, pair building, dataset assembly and validation."""

import json
import shutil
from pathlib import Path

import numpy as np
import pytest

from conftest import tree_digest_of as tree_digest
from linehint.dataset import build_dataset, build_pair, load_manifest, validate_manifest
from linehint.errors import InputDataError
from linehint.fixtures import generate_fixtures, make_fixture
from linehint.raster import RasterImage, load_png, resize_pad, save_png


@pytest.fixture(scope="module")
def sources10(tmp_path_factory):
    root = tmp_path_factory.mktemp("sources10")
    generate_fixtures(root, 10, seed=77)
    return root


@pytest.fixture(scope="module")
def sources3(tmp_path_factory):
    root = tmp_path_factory.mktemp("sources3")
    generate_fixtures(root, 3, seed=78)
    return root


@pytest.fixture(scope="module")
def aligned_build(sources10, tmp_path_factory):
    """One shared aligned build of the 10-source corpus."""
    out = tmp_path_factory.mktemp("aligned") / "out"
    manifest = build_dataset(sources10, out, layout="aligned", split=0.9, seed=5)
    return manifest


@pytest.fixture
def aligned_copy(aligned_build, tmp_path):
    """Private mutable copy of the shared aligned build."""
    dest = tmp_path / "copy"
    shutil.copytree(aligned_build.path.parent, dest)
    return dest / aligned_build.path.name


class TestGenerateFixtures:
    def test_count_and_transparency(self, tmp_path):
        paths = generate_fixtures(tmp_path, 5, seed=1)
        assert len(paths) == 5
        for path in paths:
            img = load_png(path)
            assert img.width == img.height == 256
            assert (img.alpha == 0).any()

    def test_at_least_three_interior_colors(self):
        for i in range(8):
            img = make_fixture(3, i)
            interior = img.rgb[(img.alpha > 0) & ~(img.rgb == 0).all(axis=2)]
            palette = {tuple(c) for c in np.unique(interior.reshape(-1, 3), axis=0)}
            assert len(palette) >= 3

    def test_outline_present(self):
        img = make_fixture(4, 0)
        outline = (img.alpha > 0) & (img.rgb == 0).all(axis=2)
        assert outline.sum() > 100

    def test_same_seed_identical_bytes(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        generate_fixtures(a, 3, seed=9)
        generate_fixtures(b, 3, seed=9)
        assert tree_digest(a) == tree_digest(b)

    def test_different_seeds_differ(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        generate_fixtures(a, 1, seed=1)
        generate_fixtures(b, 1, seed=2)
        assert tree_digest(a) != tree_digest(b)

    def test_rejects_bad_count(self, tmp_path):
        with pytest.raises(ValueError):
            generate_fixtures(tmp_path, 0, seed=1)


class TestBuildPair:
    def test_dimension_contract(self):
        left = RasterImage.blank(256, 256, (1, 2, 3, 255))
        right = RasterImage.blank(256, 256, (9, 8, 7, 255))
        pair = build_pair(left, right)
        assert pair.width == 512 and pair.height == 256

    def test_left_half_is_resized_input(self, creature):
        target = RasterImage.blank(256, 256, (9, 8, 7, 255))
        pair = build_pair(creature, target)
        assert np.array_equal(pair.pixels[:, :256], resize_pad(creature, 256).pixels)
        assert np.array_equal(pair.pixels[:, 256:], resize_pad(target, 256).pixels)

    def test_non_square_target_letterboxed(self):
        target = RasterImage.blank(100, 50, (255, 0, 0, 255))
        pair = build_pair(RasterImage.blank(256, 256), target)
        right = pair.pixels[:, 256:]
        assert (right[:60] == 255).all()
        assert (right[120:130, 120:130, :3] == (255, 0, 0)).all()


class TestBuildDataset:
    def test_aligned_split_and_shapes(self, aligned_build):
        assert len(aligned_build.entries) == 10
        splits = [e["split"] for e in aligned_build.entries]
        assert splits.count("train") == 9 and splits.count("test") == 1
        out = aligned_build.path.parent
        pair_count = 0
        for sub in ("train", "test"):
            for png in (out / sub).glob("*.png"):
                img = load_png(png)
                assert img.width == 2 * img.height == 512
                pair_count += 1
        assert pair_count == 10

    def test_intermediate_artifacts_written(self, aligned_build):
        out = aligned_build.path.parent
        for entry in aligned_build.entries:
            for key in ("lineart_path", "input_path", "target_path"):
                assert (out / entry[key]).exists()
            assert Path(entry["source_path"]).exists()

    def test_unpaired_layout(self, sources3, tmp_path):
        out = tmp_path / "out"
        manifest = build_dataset(sources3, out, layout="unpaired", split=0.67, seed=5)
        n_train = sum(1 for e in manifest.entries if e["split"] == "train")
        assert n_train == 2
        assert len(list((out / "trainA").glob("*.png"))) == 2
        assert len(list((out / "trainB").glob("*.png"))) == 2
        assert len(list((out / "testA").glob("*.png"))) == 1
        for png in (out / "trainA").glob("*.png"):
            img = load_png(png)
            assert img.width == img.height == 256

    def test_deterministic_rerun(self, sources3, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        build_dataset(sources3, a, seed=3)
        build_dataset(sources3, b, seed=3)
        assert tree_digest(a) == tree_digest(b)

    def test_parallelism_does_not_change_bytes(self, sources3, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        build_dataset(sources3, a, seed=3, jobs=1)
        build_dataset(sources3, b, seed=3, jobs=4)
        assert tree_digest(a) == tree_digest(b)

    def test_unreadable_source_skipped(self, tmp_path):
        src = tmp_path / "src"
        src.mkdir()
        generate_fixtures(src, 2, seed=1)
        (src / "broken.png").write_bytes(b"not a png")
        manifest = build_dataset(src, tmp_path / "out", seed=1)
        assert len(manifest.entries) == 2
        assert len(manifest.skipped) == 1
        assert "broken" in manifest.skipped[0]["source_path"]

    def test_empty_source_dir_rejected(self, tmp_path):
        src = tmp_path / "src"
        src.mkdir()
        with pytest.raises(InputDataError):
            build_dataset(src, tmp_path / "out")

    def test_manifest_roundtrip_fields(self, aligned_build):
        again = load_manifest(aligned_build.path)
        assert [e["id"] for e in again.entries] == [e["id"] for e in aligned_build.entries]
        required = {
            "id", "source_path", "lineart_path", "input_path",
            "target_path", "split", "seed", "attribution",
        }
        for entry in again.entries:
            assert required <= set(entry)


class TestValidateManifest:
    def test_fresh_dataset_valid(self, aligned_build):
        assert validate_manifest(aligned_build.path) == []

    def test_missing_file_detected(self, aligned_copy):
        manifest = load_manifest(aligned_copy)
        (aligned_copy.parent / manifest.entries[0]["lineart_path"]).unlink()
        violations = validate_manifest(aligned_copy)
        assert any(v["code"] == "missing-file" for v in violations)

    def test_duplicate_id_detected(self, aligned_copy):
        lines = aligned_copy.read_text().splitlines()
        entry_line = next(l for l in lines if '"entry"' in l)
        aligned_copy.write_text("\n".join(lines + [entry_line]) + "\n")
        violations = validate_manifest(aligned_copy)
        assert any(v["code"] == "duplicate-id" for v in violations)

    def test_bad_dimensions_detected(self, aligned_copy):
        victim = sorted((aligned_copy.parent / "train").glob("*.png"))[0]
        save_png(RasterImage.blank(100, 100), victim)
        violations = validate_manifest(aligned_copy)
        assert any(v["code"] == "bad-dimensions" for v in violations)

    def test_split_fraction_violation(self, aligned_copy):
        doctored = []
        for line in aligned_copy.read_text().splitlines():
            record = json.loads(line)
            if record.get("kind") == "entry":
                record["split"] = "test"
            doctored.append(json.dumps(record, sort_keys=True))
        aligned_copy.write_text("\n".join(doctored) + "\n")
        violations = validate_manifest(aligned_copy)
        assert any(v["code"] == "split-fraction" for v in violations)

    def test_unreadable_manifest(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            validate_manifest(tmp_path / "none.jsonl")
