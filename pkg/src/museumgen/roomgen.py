"""Single-room generation: a cubic shell with door/window substitution.

Dimensions round to whole tiles (minimum 2 m per side); the perimeter walls
are then rewritten so that doors sit at the side centers (N, E, S, W in
turn) and windows spread evenly over what remains. Substitution never
changes the floor, roof, or total perimeter tile counts.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .catalog import ArtifactGroup
from .errors import DegenerateDims, TooManyOpenings
from .scene import Compass, LightingSettings, ObjectKind, TileScene
from .sizing import RoomSpec, SizingConstants, room_dimensions


class RoomSource(enum.Enum):
    USER_PREFERENCE = "user_preference"
    DATA_DRIVEN = "data_driven"


@dataclass(frozen=True)
class RoomRequest:
    width_m: float
    depth_m: float
    n_windows: int = 0
    n_doors: int = 1
    source: RoomSource = RoomSource.USER_PREFERENCE
    group_key: str | None = None


def _round_tiles(meters: float) -> int:
    # round half up; tiles are 1 m and sides never drop below 2
    return max(2, math.floor(meters + 0.5))


def _perimeter_edges(w: int, d: int) -> dict[Compass, list[tuple[tuple[int, int], Compass]]]:
    """Wall slots per side, each an (anchor cell, side) edge of the floor rect."""
    return {
        Compass.N: [((x, 0), Compass.N) for x in range(w)],
        Compass.E: [((w - 1, y), Compass.E) for y in range(d)],
        Compass.S: [((x, d - 1), Compass.S) for x in range(w)],
        Compass.W: [((0, y), Compass.W) for y in range(d)],
    }


def _center_out(slots: list) -> list:
    center = (len(slots) - 1) / 2.0
    return sorted(range(len(slots)), key=lambda i: (abs(i - center), i))


def generate_room(req: RoomRequest, grid_height_m: float = 3.0,
                  lighting: LightingSettings | None = None) -> TileScene:
    """Build the W x D shell and substitute the requested openings."""
    if not (req.width_m >= 2.0 and req.depth_m >= 2.0):
        raise DegenerateDims(req.width_m, req.depth_m)
    if req.n_windows < 0 or req.n_doors < 0:
        raise ValueError("opening counts must be >= 0")
    w = _round_tiles(req.width_m)
    d = _round_tiles(req.depth_m)
    slots = 2 * (w + d)
    if req.n_windows + req.n_doors > slots:
        raise TooManyOpenings(slots)

    scene = TileScene(grid_height_m=grid_height_m, lighting=lighting)
    for y in range(d):
        for x in range(w):
            scene.add_floor_cell((x, y))
            scene.add_roof_cell((x, y))

    sides = _perimeter_edges(w, d)
    kinds: dict[tuple[tuple[int, int], Compass], ObjectKind] = {
        edge: ObjectKind.WALL for side in sides.values() for edge in side
    }

    # doors claim side centers, cycling N, E, S, W, then working outward
    orderings = {side: _center_out(slots_) for side, slots_ in sides.items()}
    cursor = {side: 0 for side in Compass}
    side_cycle = (Compass.N, Compass.E, Compass.S, Compass.W)
    placed = 0
    turn = 0
    while placed < req.n_doors:
        side = side_cycle[turn % 4]
        turn += 1
        order = orderings[side]
        if cursor[side] >= len(order):
            continue
        edge = sides[side][order[cursor[side]]]
        cursor[side] += 1
        kinds[edge] = ObjectKind.DOOR
        placed += 1

    # windows spread evenly over the remaining slots, clockwise from NW
    remaining = [
        edge
        for side in side_cycle
        for edge in sides[side]
        if kinds[edge] is ObjectKind.WALL
    ]
    for j in range(req.n_windows):
        index = ((2 * j + 1) * len(remaining)) // (2 * req.n_windows)
        kinds[remaining[index]] = ObjectKind.WINDOW

    for side in side_cycle:
        for (cell, edge_side) in sides[side]:
            scene.add_edge_object(kinds[(cell, edge_side)], cell, edge_side)
    return scene


def room_from_group(group: ArtifactGroup, c: SizingConstants | None = None,
                    n_windows: int = 0, n_doors: int = 1,
                    grid_height_m: float = 3.0,
                    lighting: LightingSettings | None = None) -> tuple[TileScene, RoomSpec]:
    """Calculate the group's envelope, then build the room for it."""
    c = c or SizingConstants()
    spec = room_dimensions(group, c)
    req = RoomRequest(
        width_m=spec.width_m,
        depth_m=spec.depth_m,
        n_windows=n_windows,
        n_doors=n_doors,
        source=RoomSource.DATA_DRIVEN,
        group_key=str(group.key_value),
    )
    return generate_room(req, grid_height_m, lighting), spec
