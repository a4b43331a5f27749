"""Footprint loading and seed sampling against brute-force oracles."""

import io

import numpy as np
import pytest
from PIL import Image

from museumgen.errors import (
    MultipleComponents,
    TooManySeeds,
    TooSmallInterior,
    WrongDimensions,
)
from museumgen.footprint import (
    FOOTPRINT_SIZE,
    auto_seed_points,
    load_footprint,
)


def png_bytes(mask: np.ndarray) -> bytes:
    img = Image.fromarray(np.where(mask, 255, 0).astype(np.uint8), mode="L")
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def mask_with_rect(x0, y0, x1, y1) -> np.ndarray:
    mask = np.zeros((FOOTPRINT_SIZE, FOOTPRINT_SIZE), dtype=bool)
    mask[y0:y1 + 1, x0:x1 + 1] = True
    return mask


def brute_force_distance_sq(mask: np.ndarray) -> np.ndarray:
    """Oracle: per-pixel min squared distance to any exterior pixel, where
    everything outside the image is exterior too (via a 1-pixel pad)."""
    padded = np.zeros((mask.shape[0] + 2, mask.shape[1] + 2), dtype=bool)
    padded[1:-1, 1:-1] = mask
    ext_y, ext_x = np.nonzero(~padded)
    ys, xs = np.nonzero(padded)
    out = np.zeros_like(padded, dtype=np.int64)
    for y, x in zip(ys, xs):
        out[y, x] = np.min((ext_y - y) ** 2 + (ext_x - x) ** 2)
    return out[1:-1, 1:-1]


def eligible_pixels(mask: np.ndarray):
    pts = []
    for y in range(1, FOOTPRINT_SIZE - 1):
        for x in range(1, FOOTPRINT_SIZE - 1):
            if mask[y - 1:y + 2, x - 1:x + 2].all():
                pts.append((x, y))
    return pts


class TestLoadFootprint:
    def test_all_white(self):
        fp = load_footprint(png_bytes(np.ones((128, 128), dtype=bool)))
        assert fp.interior_count == 128 * 128

    def test_centered_square(self):
        mask = mask_with_rect(32, 32, 95, 95)
        fp = load_footprint(png_bytes(mask))
        assert fp.interior_count == 64 * 64
        ring = {
            (x, y)
            for x, y in ((x, y) for y in range(32, 96) for x in range(32, 96))
            if x in (32, 95) or y in (32, 95)
        }
        assert fp.boundary() == ring

    def test_wrong_dimensions(self):
        mask = np.ones((64, 64), dtype=bool)
        img = Image.fromarray(np.where(mask, 255, 0).astype(np.uint8), mode="L")
        buf = io.BytesIO()
        img.save(buf, format="PNG")
        with pytest.raises(WrongDimensions):
            load_footprint(buf.getvalue())

    def test_two_blobs(self):
        mask = mask_with_rect(10, 10, 40, 40) | mask_with_rect(80, 80, 110, 110)
        with pytest.raises(MultipleComponents):
            load_footprint(png_bytes(mask))

    def test_diagonal_touch_is_disconnected(self):
        mask = mask_with_rect(10, 10, 40, 40) | mask_with_rect(41, 41, 70, 70)
        with pytest.raises(MultipleComponents):
            load_footprint(png_bytes(mask))

    def test_too_small(self):
        with pytest.raises(TooSmallInterior):
            load_footprint(png_bytes(mask_with_rect(10, 10, 13, 13)))

    def test_rgb_luminance_threshold(self):
        rgb = np.zeros((128, 128, 3), dtype=np.uint8)
        rgb[32:96, 32:96] = 255
        img = Image.fromarray(rgb, mode="RGB")
        buf = io.BytesIO()
        img.save(buf, format="PNG")
        fp = load_footprint(buf.getvalue())
        assert fp.interior_count == 64 * 64

    def test_idempotent_on_reencoded_output(self):
        mask = mask_with_rect(20, 30, 90, 100)
        fp = load_footprint(png_bytes(mask))
        fp2 = load_footprint(fp.to_png_bytes())
        assert np.array_equal(fp.grid, fp2.grid)


class TestAutoSeedPoints:
    def test_single_seed_is_distance_argmax(self):
        mask = mask_with_rect(32, 32, 95, 95)
        fp = load_footprint(png_bytes(mask))
        dist = brute_force_distance_sq(mask)
        eligible = eligible_pixels(mask)
        best = max(eligible, key=lambda p: (dist[p[1], p[0]], -p[1], -p[0]))
        # row-major tie-break: first eligible pixel attaining the max
        maxval = dist[best[1], best[0]]
        expected = next(p for p in eligible if dist[p[1], p[0]] == maxval)
        assert auto_seed_points(fp, 1) == [expected]

    def test_two_seeds_on_bar_vs_exhaustive_oracle(self):
        mask = mask_with_rect(44, 50, 83, 59)  # 40 x 10 bar
        fp = load_footprint(png_bytes(mask))
        dist = brute_force_distance_sq(mask)
        eligible = eligible_pixels(mask)
        maxval = max(dist[y, x] for x, y in eligible)
        first = next(p for p in eligible if dist[p[1], p[0]] == maxval)

        def min_d(p, chosen):
            return min((p[0] - c[0]) ** 2 + (p[1] - c[1]) ** 2 for c in chosen)

        candidates = [
            p for p in eligible
            if abs(p[0] - first[0]) >= 3 or abs(p[1] - first[1]) >= 3
        ]
        best_d = max(min_d(p, [first]) for p in candidates)
        second = next(p for p in candidates if min_d(p, [first]) == best_d)
        assert auto_seed_points(fp, 2) == [first, second]
        # the two seeds land near opposite ends of the bar
        xs = sorted(p[0] for p in (first, second))
        assert xs[0] < 54 and xs[1] > 73

    def test_deterministic_and_disjoint(self):
        mask = mask_with_rect(20, 20, 107, 107)
        fp = load_footprint(png_bytes(mask))
        a = auto_seed_points(fp, 8)
        b = auto_seed_points(fp, 8)
        assert a == b
        for i, (x1, y1) in enumerate(a):
            for x2, y2 in a[i + 1:]:
                assert abs(x1 - x2) >= 3 or abs(y1 - y2) >= 3  # 3x3 blocks disjoint

    def test_blocks_fully_interior(self):
        mask = mask_with_rect(30, 40, 80, 90)
        fp = load_footprint(png_bytes(mask))
        for x, y in auto_seed_points(fp, 5):
            assert fp.block_is_interior(x, y)

    def test_n_bounds(self):
        fp = load_footprint(png_bytes(mask_with_rect(32, 32, 95, 95)))
        with pytest.raises(TooManySeeds):
            auto_seed_points(fp, 0)
        with pytest.raises(TooManySeeds):
            auto_seed_points(fp, fp.interior_count // 25 + 1)


def test_bundled_footprints_all_load():
    from importlib import resources

    names = []
    base = resources.files("museumgen.data").joinpath("footprints")
    for entry in sorted(base.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".png"):
            fp = load_footprint(entry.read_bytes(), entry.name[:-4])
            assert fp.interior_count >= 25 * 8  # room for the largest seed set
            names.append(entry.name)
    assert len(names) == 20
