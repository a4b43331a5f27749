"""128x128 raster building footprints and data-driven seed selection.

A footprint is a binarized building outline: true pixels form the single
connected interior region inside which the growth generator operates.
Seed points are chosen by deterministic farthest-point sampling so repeated
runs on the same footprint give identical starting conditions.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from PIL import Image
from scipy import ndimage

from .errors import MultipleComponents, TooManySeeds, TooSmallInterior, WrongDimensions

FOOTPRINT_SIZE = 128
#: Interior pixels needed per seed: a 3x3 block plus room to grow.
PIXELS_PER_SEED = 25

Pixel = tuple[int, int]  # (x, y), y increasing downward


@dataclass(frozen=True)
class Footprint:
    id: str
    grid: np.ndarray  # bool, shape (128, 128), [y][x], True = interior

    @property
    def interior_count(self) -> int:
        return int(self.grid.sum())

    def is_interior(self, x: int, y: int) -> bool:
        if not (0 <= x < FOOTPRINT_SIZE and 0 <= y < FOOTPRINT_SIZE):
            return False
        return bool(self.grid[y, x])

    def boundary(self) -> set[Pixel]:
        """Interior pixels 8-adjacent to an exterior pixel (image borders
        count as exterior)."""
        padded = np.zeros((FOOTPRINT_SIZE + 2, FOOTPRINT_SIZE + 2), dtype=bool)
        padded[1:-1, 1:-1] = self.grid
        exterior_near = np.zeros_like(padded)
        ext = ~padded
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                if dx == 0 and dy == 0:
                    continue
                exterior_near[1:-1, 1:-1] |= ext[1 + dy : 129 + dy, 1 + dx : 129 + dx]
        mask = padded & exterior_near
        ys, xs = np.nonzero(mask[1:-1, 1:-1])
        return {(int(x), int(y)) for x, y in zip(xs, ys)}

    def block_is_interior(self, x: int, y: int) -> bool:
        """True when the full 3x3 block centered at (x, y) is interior."""
        if not (1 <= x < FOOTPRINT_SIZE - 1 and 1 <= y < FOOTPRINT_SIZE - 1):
            return False
        return bool(self.grid[y - 1 : y + 2, x - 1 : x + 2].all())

    def to_png_bytes(self) -> bytes:
        img = Image.fromarray(np.where(self.grid, 255, 0).astype(np.uint8), mode="L")
        buf = io.BytesIO()
        img.save(buf, format="PNG")
        return buf.getvalue()


def load_footprint(png_bytes: bytes, footprint_id: str = "footprint") -> Footprint:
    """Decode and validate a footprint PNG.

    Pixels with luminance >= 128 are interior. The interior must be a single
    4-connected region of at least 25 pixels.
    """
    img = Image.open(io.BytesIO(png_bytes))
    if img.size != (FOOTPRINT_SIZE, FOOTPRINT_SIZE):
        raise WrongDimensions(*img.size)
    gray = np.asarray(img.convert("L"))
    grid = gray >= 128

    count = int(grid.sum())
    if count < PIXELS_PER_SEED:
        raise TooSmallInterior(count)
    structure = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]])  # 4-connectivity
    _, n_components = ndimage.label(grid, structure=structure)
    if n_components != 1:
        raise MultipleComponents(n_components)
    grid.setflags(write=False)
    return Footprint(id=footprint_id, grid=grid)


def _distance_to_exterior_sq(grid: np.ndarray) -> np.ndarray:
    """Exact squared Euclidean distance from each pixel to the nearest
    exterior pixel (out-of-bounds counts as exterior)."""
    padded = np.zeros((FOOTPRINT_SIZE + 2, FOOTPRINT_SIZE + 2), dtype=bool)
    padded[1:-1, 1:-1] = grid
    edt = ndimage.distance_transform_edt(padded)[1:-1, 1:-1]
    return np.rint(edt * edt).astype(np.int64)


def auto_seed_points(fp: Footprint, n: int) -> list[Pixel]:
    """Choose n well-spread growth seeds deterministically.

    Greedy farthest-point sampling over pixels whose 3x3 block is interior:
    the first seed maximizes distance to the exterior, each following seed
    maximizes its minimum distance to already-chosen seeds. Ties break in
    row-major order and chosen 3x3 blocks never overlap.
    """
    maximum = fp.interior_count // PIXELS_PER_SEED
    if n < 1 or n > maximum:
        raise TooManySeeds(n, maximum)

    eligible = np.zeros_like(fp.grid)
    core = (
        fp.grid[:-2, :-2] & fp.grid[:-2, 1:-1] & fp.grid[:-2, 2:]
        & fp.grid[1:-1, :-2] & fp.grid[1:-1, 1:-1] & fp.grid[1:-1, 2:]
        & fp.grid[2:, :-2] & fp.grid[2:, 1:-1] & fp.grid[2:, 2:]
    )
    eligible[1:-1, 1:-1] = core
    ys, xs = np.nonzero(eligible)  # row-major enumeration
    if len(xs) == 0:
        raise TooManySeeds(n, 0)
    xs = xs.astype(np.int64)
    ys = ys.astype(np.int64)

    dist_sq = _distance_to_exterior_sq(fp.grid)[ys, xs]
    first = int(np.argmax(dist_sq))  # argmax takes the first max: row-major tie-break
    chosen = [first]

    min_d = (xs - xs[first]) ** 2 + (ys - ys[first]) ** 2
    blocked = (np.abs(xs - xs[first]) < 3) & (np.abs(ys - ys[first]) < 3)
    while len(chosen) < n:
        candidates = np.where(~blocked, min_d, -1)
        best = int(np.argmax(candidates))
        if candidates[best] < 0:
            raise TooManySeeds(n, len(chosen))
        chosen.append(best)
        d = (xs - xs[best]) ** 2 + (ys - ys[best]) ** 2
        min_d = np.minimum(min_d, d)
        blocked |= (np.abs(xs - xs[best]) < 3) & (np.abs(ys - ys[best]) < 3)

    return [(int(xs[i]), int(ys[i])) for i in chosen]
