"""Core imaging: grayscale, histograms, flattening, resizing, PNG I/O."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from PIL import Image

from linehint.errors import MalformedImageError
from linehint.raster import (
    GrayHistogram,
    RasterImage,
    chroma_key_background,
    flatten_background,
    histogram,
    load_png,
    parse_color,
    resize_pad,
    save_png,
    to_grayscale,
)


def solid(w, h, color):
    return RasterImage.blank(w, h, color)


class TestToGrayscale:
    def test_white_maps_to_max(self):
        out = to_grayscale(solid(2, 2, (255, 255, 255, 255)))
        assert (out.rgb == 255).all()

    def test_pure_red(self):
        # round(0.299 * 255) = 76
        out = to_grayscale(solid(1, 1, (255, 0, 0, 255)))
        assert tuple(out.pixels[0, 0]) == (76, 76, 76, 255)

    def test_black(self):
        out = to_grayscale(solid(1, 1, (0, 0, 0, 255)))
        assert tuple(out.pixels[0, 0]) == (0, 0, 0, 255)

    def test_alpha_preserved(self):
        out = to_grayscale(solid(1, 1, (10, 20, 30, 77)))
        assert out.pixels[0, 0, 3] == 77

    @given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
    @settings(max_examples=60)
    def test_idempotent(self, r, g, b):
        img = solid(1, 1, (r, g, b, 255))
        once = to_grayscale(img)
        twice = to_grayscale(once)
        assert once == twice


class TestHistogram:
    def test_direct_count(self):
        px = np.zeros((2, 2, 4), dtype=np.uint8)
        px[:, :, 3] = 255
        px[0, :, :3] = 0
        px[1, :, :3] = 255
        h = histogram(RasterImage(px))
        assert h.counts[0] == 2 and h.counts[255] == 2 and h.total == 4

    def test_alpha_exclusion(self):
        px = np.zeros((2, 2, 4), dtype=np.uint8)
        px[0, :, :3] = 0
        px[1, :, :3] = 255
        px[0, :, 3] = 0
        px[1, :, 3] = 255
        h = histogram(RasterImage(px), alpha_threshold=1)
        assert h.counts[0] == 0 and h.counts[255] == 2 and h.total == 2

    def test_1x3_levels(self):
        px = np.zeros((1, 3, 4), dtype=np.uint8)
        for i, level in enumerate((10, 10, 20)):
            px[0, i, :3] = level
        px[:, :, 3] = 255
        h = histogram(RasterImage(px))
        assert h.counts[10] == 2 and h.counts[20] == 1

    def test_rejects_color(self):
        with pytest.raises(ValueError):
            histogram(solid(1, 1, (10, 20, 30, 255)))

    def test_total_equals_passing_pixels(self):
        rng = np.random.default_rng(3)
        px = np.zeros((8, 8, 4), dtype=np.uint8)
        gray = rng.integers(0, 256, size=(8, 8), dtype=np.uint8)
        px[:, :, 0] = px[:, :, 1] = px[:, :, 2] = gray
        px[:, :, 3] = rng.integers(0, 256, size=(8, 8), dtype=np.uint8)
        for threshold in (0, 1, 128, 255):
            h = histogram(RasterImage(px), alpha_threshold=threshold)
            assert h.total == int((px[:, :, 3] >= threshold).sum())

    def test_counts_validation(self):
        with pytest.raises(ValueError):
            GrayHistogram(np.zeros(255, dtype=np.int64))


class TestFlattenBackground:
    def test_fully_transparent_becomes_white(self):
        out, mask = flatten_background(solid(1, 1, (12, 34, 56, 0)))
        assert tuple(out.pixels[0, 0]) == (255, 255, 255, 255)
        assert mask.all()

    def test_opaque_identity(self):
        out, mask = flatten_background(solid(1, 1, (10, 20, 30, 255)))
        assert tuple(out.pixels[0, 0]) == (10, 20, 30, 255)
        assert not mask.any()

    def test_half_transparent_black(self):
        # round(0 * 128/255 + 255 * 127/255) = 127
        out, _ = flatten_background(solid(1, 1, (0, 0, 0, 128)))
        assert tuple(out.pixels[0, 0]) == (127, 127, 127, 255)

    def test_output_fully_opaque(self, creature):
        out, mask = flatten_background(creature)
        assert (out.alpha == 255).all()
        assert np.array_equal(mask, creature.alpha == 0)


class TestResizePad:
    def test_identity_at_same_size(self):
        rng = np.random.default_rng(7)
        px = rng.integers(0, 256, size=(256, 256, 4), dtype=np.uint8)
        px[:, :, 3] = 255
        img = RasterImage(px)
        assert resize_pad(img, 256) == img

    def test_wide_content_letterboxed(self):
        # 100x50 red on a 100x100 white canvas scales 2.56x: the content
        # band covers output rows ~64..191; margins computed by hand from
        # the bilinear footprint.
        img = solid(100, 50, (255, 0, 0, 255))
        out = resize_pad(img, 256)
        assert out.width == out.height == 256
        assert (out.pixels[:60] == (255, 255, 255, 255)).all()
        assert (out.pixels[196:] == (255, 255, 255, 255)).all()
        assert (out.pixels[70:186, :, :3] == (255, 0, 0)).all()

    def test_single_pixel_upscale(self):
        out = resize_pad(solid(1, 1, (10, 200, 30, 255)), 4)
        assert out.width == out.height == 4
        assert (out.pixels[:, :, :3] == (10, 200, 30)).all()

    def test_output_square_for_any_input(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            w, h = (int(v) for v in rng.integers(1, 90, size=2))
            px = rng.integers(0, 256, size=(h, w, 4), dtype=np.uint8)
            out = resize_pad(RasterImage(px), 64)
            assert out.width == out.height == 64
            assert (out.alpha == 255).all()

    def test_rejects_bad_side(self):
        with pytest.raises(ValueError):
            resize_pad(solid(4, 4, (0, 0, 0, 255)), 0)


class TestChromaKey:
    def test_keyed_color_becomes_background(self, creature):
        flattened, original_mask = flatten_background(creature)
        keyed = chroma_key_background(flattened, (255, 255, 255))
        # every originally transparent pixel flattens to white, so keying
        # white recovers at least that background
        assert (keyed.alpha[original_mask] == 0).all()

    def test_other_colors_untouched(self):
        img = RasterImage.blank(4, 4, (10, 20, 30, 255))
        keyed = chroma_key_background(img, (255, 255, 255))
        assert keyed == img

    def test_parse_color(self):
        assert parse_color("FFFFFF") == (255, 255, 255)
        assert parse_color("#0a1B2c") == (10, 27, 44)
        with pytest.raises(ValueError):
            parse_color("12345")
        with pytest.raises(ValueError):
            parse_color("zzzzzz")


class TestPngIO:
    def test_round_trip(self, tmp_path, creature):
        path = tmp_path / "img.png"
        save_png(creature, path)
        again = load_png(path)
        assert again == creature
        save_png(again, tmp_path / "img2.png")
        assert load_png(tmp_path / "img2.png") == creature

    def test_random_pixels_round_trip(self, tmp_path):
        rng = np.random.default_rng(123)
        img = RasterImage(rng.integers(0, 256, size=(33, 17, 4), dtype=np.uint8))
        save_png(img, tmp_path / "r.png")
        assert load_png(tmp_path / "r.png") == img

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_png(tmp_path / "nope.png")

    def test_unwritable_path(self, tmp_path, creature):
        with pytest.raises(OSError):
            save_png(creature, tmp_path / "no" / "such" / "dir" / "img.png")

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "junk.png"
        path.write_bytes(b"this is not a png at all")
        with pytest.raises(MalformedImageError):
            load_png(path)

    def test_16bit_depth_reduction(self, tmp_path):
        arr = np.array([[65535, 0], [32768, 256]], dtype="<u2")
        path = tmp_path / "deep.png"
        Image.frombytes("I;16", (2, 2), arr.tobytes()).save(path)
        img = load_png(path)
        assert img.pixels[0, 0, 0] == 255
        assert img.pixels[0, 1, 0] == 0
        assert img.pixels[1, 0, 0] == 128
        assert img.pixels[1, 1, 0] == 1
