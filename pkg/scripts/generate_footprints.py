#!/usr/bin/env python3
"""Regenerate the bundled 128x128 footprint PNGs.

Twenty synthetic building outlines with varied massing: simple rectangles,
L/T/U/H plans, crosses, ellipses, octagons, stepped blocks, and a few
smoothed random blobs. Every output is validated (single 4-connected
interior, comfortably above the minimum seed capacity) before writing.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
from PIL import Image

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from museumgen.footprint import load_footprint  # noqa: E402
from museumgen.rng import SplitMix64  # noqa: E402

SIZE = 128
OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "museumgen" / "data" / "footprints"


def blank() -> np.ndarray:
    return np.zeros((SIZE, SIZE), dtype=bool)


def rect(grid, x0, y0, x1, y1):
    grid[y0:y1 + 1, x0:x1 + 1] = True
    return grid


def ellipse(grid, cx, cy, rx, ry):
    ys, xs = np.mgrid[0:SIZE, 0:SIZE]
    grid |= ((xs - cx) / rx) ** 2 + ((ys - cy) / ry) ** 2 <= 1.0
    return grid


def octagon(grid, cx, cy, r, cut):
    ys, xs = np.mgrid[0:SIZE, 0:SIZE]
    box = (np.abs(xs - cx) <= r) & (np.abs(ys - cy) <= r)
    diag = (np.abs(xs - cx) + np.abs(ys - cy)) <= (2 * r - cut)
    grid |= box & diag
    return grid


def blob(seed: int) -> np.ndarray:
    """Random rectangles unioned around the center, then majority-smoothed."""
    rng = SplitMix64(seed)
    grid = blank()
    rect(grid, 44, 44, 84, 84)
    for _ in range(10):
        w = rng.randint(14, 40)
        h = rng.randint(14, 40)
        x0 = rng.randint(12, 116 - w)
        y0 = rng.randint(12, 116 - h)
        # keep unions overlapping the core so the interior stays connected
        x0 = min(max(x0, 30), 84)
        y0 = min(max(y0, 30), 84)
        rect(grid, x0, y0, min(x0 + w, 116), min(y0 + h, 116))
    for _ in range(2):
        padded = np.pad(grid, 1)
        neighbors = sum(
            padded[1 + dy:129 + dy, 1 + dx:129 + dx]
            for dy in (-1, 0, 1) for dx in (-1, 0, 1)
        )
        grid = neighbors >= 5
    return grid


def build_all() -> dict[str, np.ndarray]:
    plans: dict[str, np.ndarray] = {}

    plans["fp01_square"] = rect(blank(), 20, 20, 107, 107)
    plans["fp02_wide_hall"] = rect(blank(), 8, 36, 119, 91)
    plans["fp03_tower"] = rect(blank(), 44, 8, 83, 119)

    g = rect(blank(), 20, 20, 107, 60)
    plans["fp04_lshape"] = rect(g, 20, 20, 60, 107)

    g = rect(blank(), 12, 20, 115, 56)
    plans["fp05_tshape"] = rect(g, 48, 20, 79, 111)

    g = rect(blank(), 16, 16, 111, 48)
    g = rect(g, 16, 16, 44, 111)
    plans["fp06_ushape"] = rect(g, 83, 16, 111, 111)

    g = rect(blank(), 16, 16, 44, 111)
    g = rect(g, 83, 16, 111, 111)
    plans["fp07_hshape"] = rect(g, 16, 48, 111, 79)

    g = rect(blank(), 48, 12, 79, 115)
    plans["fp08_cross"] = rect(g, 12, 48, 115, 79)

    plans["fp09_ellipse"] = ellipse(blank(), 63.5, 63.5, 52, 40)
    plans["fp10_round_hall"] = ellipse(blank(), 63.5, 63.5, 44, 52)
    plans["fp11_octagon"] = octagon(blank(), 63, 63, 48, 30)

    g = rect(blank(), 16, 16, 71, 71)
    plans["fp12_stepped"] = rect(g, 48, 48, 111, 111)

    g = rect(blank(), 12, 40, 71, 95)
    g = rect(g, 64, 28, 115, 83)
    plans["fp13_offset_twin"] = g

    g = ellipse(blank(), 44, 63.5, 32, 40)
    g = rect(g, 44, 36, 115, 91)
    plans["fp14_apse_hall"] = g

    g = rect(blank(), 20, 20, 107, 107)
    g[52:76, 52:76] = False  # courtyard void, still one connected interior
    plans["fp15_courtyard"] = g

    g = rect(blank(), 24, 12, 63, 115)
    g = rect(g, 24, 12, 115, 47)
    g = rect(g, 24, 80, 115, 115)
    plans["fp16_cshape"] = g

    for i, seed in enumerate((101, 202, 303, 404), start=17):
        plans[f"fp{i}_blob{seed}"] = blob(seed)
    return plans


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, grid in sorted(build_all().items()):
        img = Image.fromarray(np.where(grid, 255, 0).astype(np.uint8), mode="L")
        path = OUT_DIR / f"{name}.png"
        img.save(path)
        fp = load_footprint(path.read_bytes(), name)  # validates on load
        print(f"{name}: interior={fp.interior_count}")


if __name__ == "__main__":
    main()
