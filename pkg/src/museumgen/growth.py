"""Constrained growth of rectangular rooms inside a footprint.

Each seed starts as a 1-pixel void wrapped in an 8-pixel wall ring. Rooms
then grow one pixel at a time, in a fixed round-robin over rooms and the
four sides, until every wall has been blocked by the footprint border or by
another room. Walls freeze permanently on first blockage, which bounds the
run by the interior area.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NoRooms, NotTerminal, RegionNotClean, SeedOutsideInterior
from .footprint import FOOTPRINT_SIZE, Footprint, Pixel
from .rng import stream
from .scene import Compass as Side
from .scene import LightingSettings, ObjectKind, TileScene

EXTERIOR = -2
FREE = -1

SIDE_ORDER = (Side.N, Side.E, Side.S, Side.W)


@dataclass
class Wall:
    side: Side
    growable: bool = True


@dataclass
class GrowthRoom:
    """Inclusive pixel bounds of the room's void plus per-side wall state."""

    index: int
    min_x: int
    min_y: int
    max_x: int
    max_y: int
    walls: dict[Side, Wall] = field(
        default_factory=lambda: {s: Wall(s) for s in SIDE_ORDER}
    )

    @property
    def rect(self) -> tuple[int, int, int, int]:
        return (self.min_x, self.min_y, self.max_x, self.max_y)

    def void_area(self) -> int:
        return (self.max_x - self.min_x + 1) * (self.max_y - self.min_y + 1)


class GrowthState:
    """Single-writer growth simulation over one footprint.

    ``occupancy[y, x]`` holds EXTERIOR, FREE, ``2*i`` (wall of room i) or
    ``2*i + 1`` (void of room i) and is kept consistent with ``rooms``.
    """

    def __init__(self, footprint: Footprint):
        self.footprint = footprint
        self.rooms: list[GrowthRoom] = []
        self.paused = False
        self.started = False
        self.terminal = False
        self.occupancy = np.where(
            footprint.grid, np.int16(FREE), np.int16(EXTERIOR)
        )

    def growable_walls(self) -> int:
        return sum(w.growable for r in self.rooms for w in r.walls.values())

    def snapshot(self) -> dict:
        """Occupancy and room state for UI polling."""
        return {
            "footprint": self.footprint.id,
            "paused": self.paused,
            "terminal": self.terminal,
            "rooms": [
                {
                    "rect": list(room.rect),
                    "walls": {s.value: w.growable for s, w in room.walls.items()},
                }
                for room in self.rooms
            ],
            "occupancy": [[int(v) for v in row] for row in self.occupancy],
        }


def new_growth(footprint: Footprint) -> GrowthState:
    return GrowthState(footprint)


def place_seed(state: GrowthState, pixel: Pixel) -> GrowthRoom:
    """Place a 1-pixel void with its 8-pixel wall ring at ``pixel``.

    The whole 3x3 block must be free interior; otherwise the room is not
    added and the blocking pixels are reported.
    """
    if state.started:
        raise RuntimeError("cannot place a seed after growth has started")
    x, y = pixel
    if not state.footprint.is_interior(x, y):
        raise SeedOutsideInterior((x, y))
    blockers = [
        (bx, by)
        for by in range(y - 1, y + 2)
        for bx in range(x - 1, x + 2)
        if not (
            state.footprint.is_interior(bx, by)
            and state.occupancy[by, bx] == FREE
        )
    ]
    if blockers:
        raise RegionNotClean((x, y), blockers)

    room = GrowthRoom(index=len(state.rooms), min_x=x, min_y=y, max_x=x, max_y=y)
    state.rooms.append(room)
    state.occupancy[y - 1 : y + 2, x - 1 : x + 2] = np.int16(2 * room.index)
    state.occupancy[y, x] = np.int16(2 * room.index + 1)
    return room


def seed_random(state: GrowthState, seed: int, max_seeds: int = 8) -> list[Pixel]:
    """Random mode: draw a seed count from a seeded stream, then place the
    farthest-point pixels for that count."""
    from .footprint import PIXELS_PER_SEED, auto_seed_points

    rng = stream(seed, "growth-seeds")
    cap = min(max_seeds, state.footprint.interior_count // PIXELS_PER_SEED)
    n = rng.randint(1, max(1, cap))
    pixels = auto_seed_points(state.footprint, n)
    for p in pixels:
        place_seed(state, p)
    return pixels


def _advance(state: GrowthState, room: GrowthRoom, side: Side) -> bool:
    """Advance one wall outward by one pixel if the advanced ring stays
    inside the interior and lands only on free pixels."""
    occ = state.occupancy
    x0, y0, x1, y1 = room.rect
    if side is Side.N:
        ny = y0 - 2
        if ny < 0:
            return False
        strip = occ[ny, x0 - 1 : x1 + 2]
    elif side is Side.S:
        ny = y1 + 2
        if ny >= FOOTPRINT_SIZE:
            return False
        strip = occ[ny, x0 - 1 : x1 + 2]
    elif side is Side.E:
        nx = x1 + 2
        if nx >= FOOTPRINT_SIZE:
            return False
        strip = occ[y0 - 1 : y1 + 2, nx]
    else:
        nx = x0 - 2
        if nx < 0:
            return False
        strip = occ[y0 - 1 : y1 + 2, nx]
    if not (strip == FREE).all():
        return False

    wall = np.int16(2 * room.index)
    void = np.int16(2 * room.index + 1)
    if side is Side.N:
        occ[y0 - 1, x0:x1 + 1] = void
        occ[ny, x0 - 1 : x1 + 2] = wall
        room.min_y -= 1
    elif side is Side.S:
        occ[y1 + 1, x0:x1 + 1] = void
        occ[ny, x0 - 1 : x1 + 2] = wall
        room.max_y += 1
    elif side is Side.E:
        occ[y0:y1 + 1, x1 + 1] = void
        occ[y0 - 1 : y1 + 2, nx] = wall
        room.max_x += 1
    else:
        occ[y0:y1 + 1, x0 - 1] = void
        occ[y0 - 1 : y1 + 2, nx] = wall
        room.min_x -= 1
    return True


def step(state: GrowthState) -> bool:
    """One full round-robin pass; walls that cannot advance freeze.

    Returns True while at least one wall is still growable afterward.
    """
    if not state.rooms:
        raise NoRooms()
    state.started = True
    for room in state.rooms:
        for side in SIDE_ORDER:
            wall = room.walls[side]
            if not wall.growable:
                continue
            if not _advance(state, room, side):
                wall.growable = False
    if state.growable_walls() == 0:
        state.terminal = True
    return not state.terminal


def run_growth(state: GrowthState) -> GrowthState:
    """Run passes to termination (requires an unpaused state)."""
    if not state.rooms:
        raise NoRooms()
    if state.paused:
        raise RuntimeError("growth is paused")
    while step(state):
        pass
    return state


def extract_corners(room: GrowthRoom) -> list[Pixel]:
    """Outer wall-ring corners, clockwise from the top-left."""
    x0, y0, x1, y1 = room.rect
    return [
        (x0 - 1, y0 - 1),
        (x1 + 1, y0 - 1),
        (x1 + 1, y1 + 1),
        (x0 - 1, y1 + 1),
    ]


def growth_to_scene(
    state: GrowthState,
    grid_height_m: float = 3.0,
    lighting: LightingSettings | None = None,
) -> TileScene:
    """Realize a terminal growth state as tiles, one meter per pixel.

    Floors cover void pixels (roofs mirror them at the grid height); each
    room gets four wall segments spanning its outer ring, corner to corner.
    """
    if not state.terminal:
        raise NotTerminal()
    scene = TileScene(grid_height_m=grid_height_m, lighting=lighting)
    for room in state.rooms:
        x0, y0, x1, y1 = room.rect
        for y in range(y0, y1 + 1):
            for x in range(x0, x1 + 1):
                scene.add_floor_cell((x, y))
                scene.add_roof_cell((x, y))
        w = x1 - x0 + 1
        d = y1 - y0 + 1
        scene.add_edge_object(ObjectKind.WALL, (x0 - 1, y0 - 1), Side.N, span=w + 2)
        scene.add_edge_object(ObjectKind.WALL, (x1 + 1, y0 - 1), Side.E, span=d + 2)
        scene.add_edge_object(ObjectKind.WALL, (x0 - 1, y1 + 1), Side.S, span=w + 2)
        scene.add_edge_object(ObjectKind.WALL, (x0 - 1, y0 - 1), Side.W, span=d + 2)
    return scene
