"""Seeded binary space partitioning with cell-state rasterization.

A rectangular cell footprint is split recursively until the leaf count
matches the requested room count; each leaf hosts one room, corridors are
attempted toward neighbouring rooms in the four cardinal directions, and a
failed attempt restarts the whole division with the next derived seed.
The accepted layout rasterizes into per-cell states (floor, wall, corner
wall, door, window) that realize directly as oriented 3D tiles.

All randomness flows through per-phase SplitMix64 streams derived from
``seed + attempt``, so every accepted layout is replayable bit-for-bit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .catalog import Catalog, GroupKey
from .errors import EmptyCatalog, InfeasibleParams, RestartExhausted
from .rng import SplitMix64, stream
from .scene import Compass, LightingSettings, ObjectKind, TileScene
from .sizing import SizingConstants, plan_rooms

#: Cells kept free between a room and its leaf border: one for the wall ring
#: and one so corridors always have a floor cell between two door rings.
LEAF_MARGIN = 2

Rect = tuple[int, int, int, int]  # inclusive (min_x, min_y, max_x, max_y)


class CellState(enum.Enum):
    EMPTY = "empty"
    FLOOR = "floor"
    WALL = "wall"
    CORNER_WALL = "corner"
    DOOR = "door"
    WINDOW = "window"


ORIENTED_STATES = (CellState.WALL, CellState.CORNER_WALL, CellState.DOOR, CellState.WINDOW)


@dataclass(frozen=True)
class BspParams:
    footprint_w: int
    footprint_d: int
    num_rooms: int
    room_min: int = 3
    room_max: int = 6
    corridor_min: int = 1
    corridor_max: int = 2
    seed: int = 0
    max_restarts: int = 64

    def validate(self):
        if self.num_rooms < 1:
            raise InfeasibleParams("num_rooms must be >= 1")
        if self.room_min < 3:
            raise InfeasibleParams("room_min must be >= 3")
        if self.room_min > self.room_max:
            raise InfeasibleParams("room_min must be <= room_max")
        if self.corridor_min < 1:
            raise InfeasibleParams("corridor_min must be >= 1")
        if self.corridor_min > self.corridor_max:
            raise InfeasibleParams("corridor_min must be <= corridor_max")
        if self.footprint_w < 1 or self.footprint_d < 1:
            raise InfeasibleParams("footprint dimensions must be positive")
        if self.num_rooms * self.room_min**2 > self.footprint_w * self.footprint_d:
            raise InfeasibleParams(
                f"{self.num_rooms} rooms of side >= {self.room_min} exceed the "
                f"{self.footprint_w}x{self.footprint_d} footprint area"
            )

    def to_dict(self) -> dict:
        return {
            "footprint_w": self.footprint_w,
            "footprint_d": self.footprint_d,
            "num_rooms": self.num_rooms,
            "room_min": self.room_min,
            "room_max": self.room_max,
            "corridor_min": self.corridor_min,
            "corridor_max": self.corridor_max,
            "seed": self.seed,
            "max_restarts": self.max_restarts,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BspParams":
        names = (
            "footprint_w", "footprint_d", "num_rooms", "room_min", "room_max",
            "corridor_min", "corridor_max", "seed", "max_restarts",
        )
        return cls(**{k: int(data[k]) for k in names if k in data})


@dataclass
class BspNode:
    rect: Rect
    children: tuple["BspNode", "BspNode"] | None = None

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    def leaves(self) -> list["BspNode"]:
        if self.is_leaf:
            return [self]
        return self.children[0].leaves() + self.children[1].leaves()

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"rect": list(self.rect)}
        return {
            "rect": list(self.rect),
            "children": [c.to_dict() for c in self.children],
        }


@dataclass(frozen=True)
class Corridor:
    rect: Rect
    room_a: int
    room_b: int
    axis: str  # "x": runs east-west, "y": runs north-south


@dataclass
class BspLayout:
    params: BspParams
    attempt: int
    tree: BspNode
    rooms: list[Rect]
    corridors: list[Corridor]

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "attempt": self.attempt,
            "tree": self.tree.to_dict(),
            "rooms": [list(r) for r in self.rooms],
            "corridors": [
                {"rect": list(c.rect), "rooms": [c.room_a, c.room_b], "axis": c.axis}
                for c in self.corridors
            ],
        }


def _rect_w(r: Rect) -> int:
    return r[2] - r[0] + 1


def _rect_d(r: Rect) -> int:
    return r[3] - r[1] + 1


def _expand(r: Rect) -> Rect:
    return (r[0] - 1, r[1] - 1, r[2] + 1, r[3] + 1)


def _intersects(a: Rect, b: Rect) -> bool:
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]


class _AttemptFailed(Exception):
    """Internal: this attempt cannot complete; restart with the next seed."""


def partition(params: BspParams, attempt: int = 0) -> BspNode:
    """Split the footprint until the leaf count equals ``num_rooms``.

    The split axis and position come from the per-attempt "split" stream;
    positions are drawn from the range that keeps both children large enough
    for a minimum room plus its margin. The largest splittable leaf is
    divided first (creation order breaks ties).
    """
    params.validate()
    rng = stream((params.seed + attempt) & ((1 << 64) - 1), "split")
    min_leaf = params.room_min + 2 * LEAF_MARGIN
    root = BspNode((0, 0, params.footprint_w - 1, params.footprint_d - 1))
    if _rect_w(root.rect) < min_leaf or _rect_d(root.rect) < min_leaf:
        raise _AttemptFailed()
    leaves = [root]
    while len(leaves) < params.num_rooms:
        splittable = [
            n for n in leaves
            if _rect_w(n.rect) >= 2 * min_leaf or _rect_d(n.rect) >= 2 * min_leaf
        ]
        if not splittable:
            raise _AttemptFailed()
        node = max(splittable, key=lambda n: _rect_w(n.rect) * _rect_d(n.rect))
        x0, y0, x1, y1 = node.rect
        can_x = _rect_w(node.rect) >= 2 * min_leaf  # split with a vertical cut
        can_y = _rect_d(node.rect) >= 2 * min_leaf
        if can_x and can_y:
            axis = "x" if rng.chance() else "y"
        else:
            axis = "x" if can_x else "y"
        if axis == "x":
            cut = rng.randint(x0 + min_leaf - 1, x1 - min_leaf)
            a = BspNode((x0, y0, cut, y1))
            b = BspNode((cut + 1, y0, x1, y1))
        else:
            cut = rng.randint(y0 + min_leaf - 1, y1 - min_leaf)
            a = BspNode((x0, y0, x1, cut))
            b = BspNode((x0, cut + 1, x1, y1))
        node.children = (a, b)
        leaves[leaves.index(node)] = a
        leaves.append(b)
    return root


def _place_rooms(tree: BspNode, params: BspParams, rng: SplitMix64,
                 room_mins: tuple[int, ...] | None) -> list[Rect]:
    rooms = []
    for i, leaf in enumerate(tree.leaves()):
        x0, y0, x1, y1 = leaf.rect
        avail_w = _rect_w(leaf.rect) - 2 * LEAF_MARGIN
        avail_d = _rect_d(leaf.rect) - 2 * LEAF_MARGIN
        lo = params.room_min if room_mins is None else max(params.room_min, room_mins[i])
        hi_w = min(params.room_max, avail_w)
        hi_d = min(params.room_max, avail_d)
        if hi_w < lo or hi_d < lo:
            raise _AttemptFailed()
        w = rng.randint(lo, hi_w)
        d = rng.randint(lo, hi_d)
        rx = x0 + LEAF_MARGIN + rng.below(avail_w - w + 1)
        ry = y0 + LEAF_MARGIN + rng.below(avail_d - d + 1)
        rooms.append((rx, ry, rx + w - 1, ry + d - 1))
    return rooms


def _corridor_candidate(rooms: list[Rect], a: int, direction: Compass,
                        params: BspParams, rng: SplitMix64,
                        corridors: list[Corridor], bounds: Rect) -> Corridor | None:
    """Straight corridor from room ``a`` toward the nearest room in one
    direction, or None when no clear candidate exists.

    A candidate needs an overlap of the facing room sides at least the drawn
    width, an interior of length >= 1 between the two wall rings, and a
    one-cell clearance from everything except its two endpoint rooms.
    """
    ax0, ay0, ax1, ay1 = rooms[a]
    best = None
    for b, other in enumerate(rooms):
        if b == a:
            continue
        bx0, by0, bx1, by1 = other
        if direction in (Compass.E, Compass.W):
            lo, hi = max(ay0, by0), min(ay1, by1)
            if lo > hi:
                continue
            if direction is Compass.E and bx0 > ax1:
                gap = bx0 - ax1 - 1
            elif direction is Compass.W and bx1 < ax0:
                gap = ax0 - bx1 - 1
            else:
                continue
        else:
            lo, hi = max(ax0, bx0), min(ax1, bx1)
            if lo > hi:
                continue
            if direction is Compass.S and by0 > ay1:
                gap = by0 - ay1 - 1
            elif direction is Compass.N and by1 < ay0:
                gap = ay0 - by1 - 1
            else:
                continue
        if best is None or gap < best[0]:
            best = (gap, b, lo, hi)
    if best is None:
        return None
    gap, b, lo, hi = best
    overlap = hi - lo + 1
    if gap < 3 or overlap < params.corridor_min:
        return None

    width = rng.randint(params.corridor_min, min(params.corridor_max, overlap))
    offset = lo + rng.below(overlap - width + 1)
    ax0, ay0, ax1, ay1 = rooms[a]
    bx0, by0, bx1, by1 = rooms[b]
    if direction is Compass.E:
        rect = (ax1 + 2, offset, bx0 - 2, offset + width - 1)
        axis = "x"
    elif direction is Compass.W:
        rect = (bx1 + 2, offset, ax0 - 2, offset + width - 1)
        axis = "x"
    elif direction is Compass.S:
        rect = (offset, ay1 + 2, offset + width - 1, by0 - 2)
        axis = "y"
    else:
        rect = (offset, by1 + 2, offset + width - 1, ay0 - 2)
        axis = "y"

    ring = _expand(rect)
    if ring[0] < bounds[0] or ring[1] < bounds[1] or ring[2] > bounds[2] or ring[3] > bounds[3]:
        return None
    for i, room in enumerate(rooms):
        if _intersects(ring, room):
            return None
        if i not in (a, b) and _intersects(ring, _expand(room)):
            return None
    for other in corridors:
        if _intersects(ring, _expand(other.rect)):
            return None
    return Corridor(rect=rect, room_a=min(a, b), room_b=max(a, b), axis=axis)


def _connected(n_rooms: int, corridors: list[Corridor]) -> bool:
    adjacency: dict[int, list[int]] = {i: [] for i in range(n_rooms)}
    for c in corridors:
        adjacency[c.room_a].append(c.room_b)
        adjacency[c.room_b].append(c.room_a)
    seen = {0}
    queue = [0]
    while queue:
        node = queue.pop()
        for nxt in adjacency[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == n_rooms


def place_rooms_and_corridors(tree: BspNode, params: BspParams, attempt: int = 0,
                              room_mins: tuple[int, ...] | None = None) -> BspLayout:
    """Room and corridor placement for one partition attempt.

    Rooms are sized and positioned from the "room" stream; corridors are
    attempted per room toward N, E, S, W neighbours (one corridor per room
    pair) from the "corridor" stream. A disconnected result fails the
    attempt.
    """
    master = (params.seed + attempt) & ((1 << 64) - 1)
    room_rng = stream(master, "room")
    corridor_rng = stream(master, "corridor")
    rooms = _place_rooms(tree, params, room_rng, room_mins)

    bounds = (0, 0, params.footprint_w - 1, params.footprint_d - 1)
    corridors: list[Corridor] = []
    linked: set[tuple[int, int]] = set()
    for a in range(len(rooms)):
        for direction in (Compass.N, Compass.E, Compass.S, Compass.W):
            candidate = _corridor_candidate(
                rooms, a, direction, params, corridor_rng, corridors, bounds
            )
            if candidate is None:
                continue
            key = (candidate.room_a, candidate.room_b)
            if key in linked:
                continue
            corridors.append(candidate)
            linked.add(key)
    if not _connected(len(rooms), corridors):
        raise _AttemptFailed()
    return BspLayout(params=params, attempt=attempt, tree=tree, rooms=rooms,
                     corridors=corridors)


def generate_layout(params: BspParams,
                    room_mins: tuple[int, ...] | None = None) -> BspLayout:
    """Partition/place/connect with restart: attempt i reseeds at seed+i."""
    params.validate()
    if room_mins is not None:
        total = sum(m * m for m in room_mins)
        if total > params.footprint_w * params.footprint_d:
            raise InfeasibleParams(
                f"data-driven rooms need {total} cells, footprint has "
                f"{params.footprint_w * params.footprint_d}"
            )
    attempts = params.max_restarts + 1
    for attempt in range(attempts):
        try:
            tree = partition(params, attempt)
            return place_rooms_and_corridors(tree, params, attempt, room_mins)
        except _AttemptFailed:
            continue
    raise RestartExhausted(attempts)


class CellGrid:
    """Dense grid of cell states with per-cell orientation."""

    def __init__(self, width: int, depth: int):
        self.width = width
        self.depth = depth
        self.states = np.full((depth, width), CellState.EMPTY, dtype=object)
        self.orientations = np.full((depth, width), None, dtype=object)

    def set(self, x: int, y: int, state: CellState, orientation: Compass | None = None):
        self.states[y, x] = state
        self.orientations[y, x] = orientation

    def get(self, x: int, y: int) -> tuple[CellState, Compass | None]:
        return self.states[y, x], self.orientations[y, x]

    def state_at(self, x: int, y: int) -> CellState:
        if not (0 <= x < self.width and 0 <= y < self.depth):
            return CellState.EMPTY
        return self.states[y, x]

    def counts(self) -> dict[CellState, int]:
        result = {state: 0 for state in CellState}
        for row in self.states:
            for state in row:
                result[state] += 1
        return result

    def enclosure_ok(self) -> bool:
        """No floor cell may touch an empty cell, even diagonally."""
        for y in range(self.depth):
            for x in range(self.width):
                if self.states[y, x] is not CellState.FLOOR:
                    continue
                for dy in (-1, 0, 1):
                    for dx in (-1, 0, 1):
                        if self.state_at(x + dx, y + dy) is CellState.EMPTY:
                            return False
        return True

    def floor_connected(self) -> bool:
        """Every floor cell reachable from any other through floors/doors."""
        walkable = {
            (x, y)
            for y in range(self.depth)
            for x in range(self.width)
            if self.states[y, x] in (CellState.FLOOR, CellState.DOOR)
        }
        floors = [
            (x, y)
            for y in range(self.depth)
            for x in range(self.width)
            if self.states[y, x] is CellState.FLOOR
        ]
        if not floors:
            return True
        seen = {floors[0]}
        queue = [floors[0]]
        while queue:
            x, y = queue.pop()
            for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if (nx, ny) in walkable and (nx, ny) not in seen:
                    seen.add((nx, ny))
                    queue.append((nx, ny))
        return all(f in seen for f in floors)


#: Corner-post orientation: compass code of the cell corner carrying the post,
#: which is the direction of the region's interior diagonal.
_CORNER_CODES = {
    (1, 1): Compass.S,   # NW ring corner, interior to the south-east
    (-1, 1): Compass.W,  # NE ring corner, interior to the south-west
    (-1, -1): Compass.N, # SE ring corner, interior to the north-west
    (1, -1): Compass.E,  # SW ring corner, interior to the north-east
}

WINDOW_STRIDE = 4


def rasterize_states(layout: BspLayout) -> CellGrid:
    """Realize a layout as cell states.

    Interiors become floors; each region's one-cell ring becomes walls facing
    the floor, with corner posts on room ring corners. Every room-corridor
    junction gets exactly one door (centered; even widths tie-break from the
    "door" stream) and exterior-facing room walls get windows at a fixed
    stride with a per-run phase from the "window" stream.
    """
    master = (layout.params.seed + layout.attempt) & ((1 << 64) - 1)
    door_rng = stream(master, "door")
    window_rng = stream(master, "window")

    grid = CellGrid(layout.params.footprint_w, layout.params.footprint_d)
    regions = [("room", r) for r in layout.rooms] + [
        ("corridor", c.rect) for c in layout.corridors
    ]
    for _, (x0, y0, x1, y1) in regions:
        for y in range(y0, y1 + 1):
            for x in range(x0, x1 + 1):
                grid.set(x, y, CellState.FLOOR)

    for kind, rect in regions:
        x0, y0, x1, y1 = rect
        for y in range(y0 - 1, y1 + 2):
            for x in range(x0 - 1, x1 + 2):
                if x0 <= x <= x1 and y0 <= y <= y1:
                    continue
                if grid.states[y, x] is not CellState.EMPTY:
                    continue
                corner_dx = 1 if x < x0 else (-1 if x > x1 else 0)
                corner_dy = 1 if y < y0 else (-1 if y > y1 else 0)
                if kind == "room" and corner_dx != 0 and corner_dy != 0:
                    grid.set(x, y, CellState.CORNER_WALL, _CORNER_CODES[(corner_dx, corner_dy)])
                else:
                    orientation = _facing_floor(grid, x, y)
                    grid.set(x, y, CellState.WALL, orientation)

    _place_doors(grid, layout, door_rng)
    _place_windows(grid, layout, window_rng)
    return grid


def _facing_floor(grid: CellGrid, x: int, y: int) -> Compass:
    """Orientation of an oriented cell: first of N, E, S, W with a floor
    neighbour (falls back to N for cells that will face one later)."""
    for direction, (dx, dy) in (
        (Compass.N, (0, -1)),
        (Compass.E, (1, 0)),
        (Compass.S, (0, 1)),
        (Compass.W, (-1, 0)),
    ):
        if grid.state_at(x + dx, y + dy) is CellState.FLOOR:
            return direction
    return Compass.N


def _junction_cells(room: Rect, corridor: Corridor) -> list[tuple[int, int]]:
    """Ring cells of ``room`` crossed by the corridor mouth."""
    rx0, ry0, rx1, ry1 = room
    cx0, cy0, cx1, cy1 = corridor.rect
    if corridor.axis == "x":
        if cx0 > rx1:  # corridor departs eastward
            return [(rx1 + 1, y) for y in range(cy0, cy1 + 1)]
        return [(rx0 - 1, y) for y in range(cy0, cy1 + 1)]
    if cy0 > ry1:  # departs southward
        return [(x, ry1 + 1) for x in range(cx0, cx1 + 1)]
    return [(x, ry0 - 1) for x in range(cx0, cx1 + 1)]


def _place_doors(grid: CellGrid, layout: BspLayout, rng: SplitMix64):
    for corridor in layout.corridors:
        for room_index in (corridor.room_a, corridor.room_b):
            cells = _junction_cells(layout.rooms[room_index], corridor)
            if len(cells) % 2 == 1:
                pick = cells[len(cells) // 2]
            else:
                half = len(cells) // 2
                pick = cells[half - 1 + rng.below(2)]
            x, y = pick
            grid.set(x, y, CellState.DOOR, _facing_floor(grid, x, y))


def _place_windows(grid: CellGrid, layout: BspLayout, rng: SplitMix64):
    """Windows on room walls whose far side faces nothing, every
    WINDOW_STRIDE cells with a drawn phase per wall run."""
    for room in layout.rooms:
        x0, y0, x1, y1 = room
        sides = (
            ([(x, y0 - 1) for x in range(x0, x1 + 1)], (0, -1)),
            ([(x1 + 1, y) for y in range(y0, y1 + 1)], (1, 0)),
            ([(x, y1 + 1) for x in range(x0, x1 + 1)], (0, 1)),
            ([(x0 - 1, y) for y in range(y0, y1 + 1)], (-1, 0)),
        )
        for cells, (dx, dy) in sides:
            run = [
                (x, y)
                for x, y in cells
                if grid.states[y, x] is CellState.WALL
                and grid.state_at(x + dx, y + dy) is CellState.EMPTY
            ]
            if not run:
                continue
            phase = rng.below(WINDOW_STRIDE)
            for i in range(phase, len(run), WINDOW_STRIDE):
                x, y = run[i]
                grid.set(x, y, CellState.WINDOW, grid.orientations[y, x])


_STATE_KINDS = {
    CellState.WALL: ObjectKind.WALL,
    CellState.CORNER_WALL: ObjectKind.CORNER_WALL,
    CellState.DOOR: ObjectKind.DOOR,
    CellState.WINDOW: ObjectKind.WINDOW,
}


def cells_to_scene(grid: CellGrid, grid_height_m: float = 3.0, grid_levels: int = 1,
                   lighting: LightingSettings | None = None) -> TileScene:
    """Emit one tile per non-empty cell (plans duplicate across levels).

    Floors also emit a mirrored roof tile; oriented cells become edge objects
    on the edge they share with the floor they face (corner posts sit on the
    cell corner named by their orientation code).
    """
    scene = TileScene(grid_levels=grid_levels, grid_height_m=grid_height_m,
                      lighting=lighting)
    for level in range(grid_levels):
        # floors first so the edge objects' attachment checks see them
        for y in range(grid.depth):
            for x in range(grid.width):
                if grid.states[y, x] is CellState.FLOOR:
                    scene.add_floor_cell((x, y), level)
                    scene.add_roof_cell((x, y), level)
        for y in range(grid.depth):
            for x in range(grid.width):
                state, orientation = grid.get(x, y)
                if state in _STATE_KINDS:
                    scene.add_edge_object(_STATE_KINDS[state], (x, y),
                                          orientation or Compass.N, 1, level)
    return scene


def params_from_data(catalog: Catalog, key: GroupKey,
                     fp_dims: tuple[int, int], seed: int = 0,
                     constants: SizingConstants | None = None,
                     max_restarts: int = 64) -> tuple[BspParams, tuple[int, ...]]:
    """Derive BSP parameters from grouped artifact data.

    The room count is the group count; each room's minimum side comes from
    its calculated envelope rounded up to cells. Remaining fields are drawn
    from the "defaults" stream of the seed.
    """
    if not catalog.records:
        raise EmptyCatalog()
    specs = plan_rooms(catalog, key, constants)
    room_mins = tuple(max(3, int(np.ceil(spec.width_m))) for spec in specs)
    total = sum(m * m for m in room_mins)
    if total > fp_dims[0] * fp_dims[1]:
        raise InfeasibleParams(
            f"data-driven rooms need {total} cells, footprint has {fp_dims[0] * fp_dims[1]}"
        )
    rng = stream(seed, "defaults")
    room_min = max(3, min(room_mins))
    room_max = max(max(room_mins), room_min + rng.below(3))
    corridor_min = 1
    corridor_max = 1 + rng.below(2)
    params = BspParams(
        footprint_w=fp_dims[0],
        footprint_d=fp_dims[1],
        num_rooms=len(specs),
        room_min=room_min,
        room_max=room_max,
        corridor_min=corridor_min,
        corridor_max=corridor_max,
        seed=seed,
        max_restarts=max_restarts,
    )
    params.validate()
    return params, room_mins
