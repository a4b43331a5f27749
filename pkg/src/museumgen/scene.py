"""Grid scene substrate: tile placement, snapping, lighting, scale modes.

All generators emit into a TileScene and users edit it through the same
operations. Floor-bound objects occupy grid cells (floors and roofs in
separate strata so a storey's ceiling can coexist with the slab above);
edge-bound objects (walls, doors, windows, corner posts) sit on cell edges
and must stay within one tile of a floor; free objects carry an arbitrary
pose. World geometry is in meters, Y up, with the grid plane mapped to X/Z.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

from .errors import (
    CellOccupied,
    LevelOutOfRange,
    NoAdjacentFloor,
    OutOfRange,
    UnknownId,
)

Cell = tuple[int, int]

KELVIN_MIN = 1000.0
KELVIN_MAX = 12000.0
#: Slab and wall thickness in meters.
SLAB_THICKNESS = 0.1
MODEL_SCALE_DIVISOR = 20.0


class Compass(enum.Enum):
    N = "n"
    E = "e"
    S = "s"
    W = "w"

    @property
    def rotation_deg(self) -> int:
        return {"n": 0, "e": 90, "s": 180, "w": 270}[self.value]


class ObjectKind(enum.Enum):
    FLOOR = "floor"
    ROOF = "roof"
    WALL = "wall"
    CORNER_WALL = "corner_wall"
    DOOR = "door"
    WINDOW = "window"
    STAIRS = "stairs"
    LANDSCAPE = "landscape"
    FURNITURE = "furniture"
    ARTIFACT_HOLDER = "artifact_holder"


class PlacementClass(enum.Enum):
    FLOOR_BOUND = "floor_bound"
    EDGE_BOUND = "edge_bound"
    FREE = "free"


KIND_CLASS: dict[ObjectKind, PlacementClass] = {
    ObjectKind.FLOOR: PlacementClass.FLOOR_BOUND,
    ObjectKind.ROOF: PlacementClass.FLOOR_BOUND,
    ObjectKind.WALL: PlacementClass.EDGE_BOUND,
    ObjectKind.CORNER_WALL: PlacementClass.EDGE_BOUND,
    ObjectKind.DOOR: PlacementClass.EDGE_BOUND,
    ObjectKind.WINDOW: PlacementClass.EDGE_BOUND,
    ObjectKind.STAIRS: PlacementClass.FREE,
    ObjectKind.LANDSCAPE: PlacementClass.FREE,
    ObjectKind.FURNITURE: PlacementClass.FREE,
    ObjectKind.ARTIFACT_HOLDER: PlacementClass.FREE,
}


class ScaleMode(enum.Enum):
    HUMAN = "human"  # 1:1
    MODEL = "model"  # 1:20

    def to_world(self, meters: float) -> float:
        if self is ScaleMode.MODEL:
            return meters / MODEL_SCALE_DIVISOR
        return meters


@dataclass(frozen=True)
class LightingSettings:
    sun_on: bool = True
    ceiling_on: bool = True
    spot_on: bool = True
    temperature_k: float = 6600.0

    def __post_init__(self):
        clamped = min(max(float(self.temperature_k), KELVIN_MIN), KELVIN_MAX)
        object.__setattr__(self, "temperature_k", clamped)


def kelvin_to_color(temperature_k: float) -> tuple[int, int, int]:
    """Blackbody-ish light color via the piecewise log/power fit
    (255-red below 6600 K, log-fit green, power-fit above)."""
    if not (KELVIN_MIN <= temperature_k <= KELVIN_MAX):
        raise OutOfRange(temperature_k, KELVIN_MIN, KELVIN_MAX)
    t = temperature_k / 100.0
    if t <= 66.0:
        r = 255.0
    else:
        r = 329.698727446 * (t - 60.0) ** -0.1332047592
    if t <= 66.0:
        g = 99.4708025861 * math.log(t) - 161.1195681661
    else:
        g = 288.1221695283 * (t - 60.0) ** -0.0755148492
    if t >= 66.0:
        b = 255.0
    elif t <= 19.0:
        b = 0.0
    else:
        b = 138.5177312231 * math.log(t - 10.0) - 305.0447927307

    def clamp8(v: float) -> int:
        return int(round(min(max(v, 0.0), 255.0)))

    return (clamp8(r), clamp8(g), clamp8(b))


@dataclass(frozen=True)
class CellPose:
    level: int
    cell: Cell


@dataclass(frozen=True)
class EdgePose:
    level: int
    cell: Cell
    side: Compass
    span: int = 1

    def covered_cells(self) -> list[Cell]:
        x, y = self.cell
        if self.side in (Compass.N, Compass.S):
            return [(x + i, y) for i in range(self.span)]
        return [(x, y + i) for i in range(self.span)]


@dataclass(frozen=True)
class FreePose:
    position: tuple[float, float, float]
    rotation_deg: float = 0.0
    scale: tuple[float, float, float] = (1.0, 1.0, 1.0)


Pose = CellPose | EdgePose | FreePose


@dataclass
class PlacedObject:
    id: int
    kind: ObjectKind
    pose: Pose
    material_id: str
    ghost: bool = False
    artifact_kind: str | None = None
    artifact_ref: str | None = None

    @property
    def placement_class(self) -> PlacementClass:
        return KIND_CLASS[self.kind]


def default_material(kind: ObjectKind) -> str:
    return f"{kind.value}_default"


class TileScene:
    """Mutable scene with a single-writer contract per instance."""

    def __init__(
        self,
        grid_levels: int = 1,
        grid_height_m: float = 3.0,
        tile_size: int = 1,
        scale_mode: ScaleMode = ScaleMode.HUMAN,
        lighting: LightingSettings | None = None,
    ):
        if grid_levels < 1:
            raise ValueError("grid_levels must be >= 1")
        if grid_height_m <= 0:
            raise ValueError("grid_height_m must be > 0")
        if tile_size not in (1, 2, 4):
            raise ValueError("tile_size must be 1, 2 or 4")
        self.grid_levels = grid_levels
        self.grid_height_m = float(grid_height_m)
        self.tile_size = int(tile_size)
        self.scale_mode = scale_mode
        self.lighting = lighting or LightingSettings()
        self._objects: dict[int, PlacedObject] = {}
        self._next_id = 1
        # occupancy strata: floors and roofs each claim (level, cell) separately
        self._floors: dict[tuple[int, Cell], int] = {}
        self._roofs: dict[tuple[int, Cell], int] = {}

    # -- introspection -------------------------------------------------------

    def objects(self) -> list[PlacedObject]:
        return [self._objects[i] for i in sorted(self._objects)]

    def get(self, object_id: int) -> PlacedObject:
        try:
            return self._objects[object_id]
        except KeyError:
            raise UnknownId(object_id) from None

    def __len__(self) -> int:
        return len(self._objects)

    def floor_at(self, level: int, cell: Cell) -> int | None:
        return self._floors.get((level, cell))

    def _check_level(self, level: int):
        if not (0 <= level < self.grid_levels):
            raise LevelOutOfRange(level, self.grid_levels)

    def _has_floor_near(self, level: int, cell: Cell) -> bool:
        x, y = cell
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                if (level, (x + dx, y + dy)) in self._floors:
                    return True
        return False

    def _alloc(self, kind: ObjectKind, pose: Pose, material_id: str | None,
               artifact_kind: str | None = None, artifact_ref: str | None = None,
               object_id: int | None = None) -> PlacedObject:
        oid = self._next_id if object_id is None else object_id
        if oid in self._objects:
            raise ValueError(f"object id {oid} already in scene")
        obj = PlacedObject(
            id=oid,
            kind=kind,
            pose=pose,
            material_id=material_id or default_material(kind),
            artifact_kind=artifact_kind,
            artifact_ref=artifact_ref,
        )
        self._objects[oid] = obj
        self._next_id = max(self._next_id, oid + 1)
        return obj

    # -- exact-pose additions (generators and import) -------------------------

    def add_floor_cell(self, cell: Cell, level: int = 0,
                       material_id: str | None = None, object_id: int | None = None) -> PlacedObject:
        self._check_level(level)
        if (level, cell) in self._floors:
            raise CellOccupied(level, cell)
        obj = self._alloc(ObjectKind.FLOOR, CellPose(level, cell), material_id, object_id=object_id)
        self._floors[(level, cell)] = obj.id
        return obj

    def add_roof_cell(self, cell: Cell, level: int = 0,
                      material_id: str | None = None, object_id: int | None = None) -> PlacedObject:
        self._check_level(level)
        if (level, cell) in self._roofs:
            raise CellOccupied(level, cell)
        obj = self._alloc(ObjectKind.ROOF, CellPose(level, cell), material_id, object_id=object_id)
        self._roofs[(level, cell)] = obj.id
        return obj

    def add_edge_object(self, kind: ObjectKind, cell: Cell, side: str | Compass,
                        span: int = 1, level: int = 0, material_id: str | None = None,
                        object_id: int | None = None) -> PlacedObject:
        if KIND_CLASS[kind] is not PlacementClass.EDGE_BOUND:
            raise ValueError(f"{kind.value} is not edge-bound")
        self._check_level(level)
        side = Compass(side) if isinstance(side, str) else side
        if span < 1:
            raise ValueError("span must be >= 1")
        pose = EdgePose(level, cell, side, span)
        for covered in pose.covered_cells():
            if not self._has_floor_near(level, covered):
                raise NoAdjacentFloor()
        return self._alloc(kind, pose, material_id, object_id=object_id)

    def add_free_object(self, kind: ObjectKind, position: tuple[float, float, float],
                        rotation_deg: float = 0.0,
                        scale: tuple[float, float, float] = (1.0, 1.0, 1.0),
                        material_id: str | None = None,
                        artifact_kind: str | None = None, artifact_ref: str | None = None,
                        object_id: int | None = None) -> PlacedObject:
        if KIND_CLASS[kind] is not PlacementClass.FREE:
            raise ValueError(f"{kind.value} is not free-placed")
        pose = FreePose(tuple(float(v) for v in position), float(rotation_deg),
                        tuple(float(v) for v in scale))
        return self._alloc(kind, pose, material_id,
                           artifact_kind=artifact_kind, artifact_ref=artifact_ref,
                           object_id=object_id)

    # -- snapping placement (interactive path) --------------------------------

    def _snap_cell(self, at: tuple[float, float]) -> Cell:
        return (math.floor(at[0] / self.tile_size), math.floor(at[1] / self.tile_size))

    def _snap_edge(self, level: int, at: tuple[float, float]) -> tuple[Cell, Compass]:
        """Nearest edge of the nearest floor tile (ties: row-major cell, then
        N,E,S,W)."""
        ts = self.tile_size
        cx, cy = self._snap_cell(at)
        candidates = []
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                cell = (cx + dx, cy + dy)
                if (level, cell) in self._floors:
                    center = ((cell[0] + 0.5) * ts, (cell[1] + 0.5) * ts)
                    d = (at[0] - center[0]) ** 2 + (at[1] - center[1]) ** 2
                    candidates.append((d, cell[1], cell[0], cell))
        if not candidates:
            raise NoAdjacentFloor()
        _, _, _, cell = min(candidates)
        x0, y0 = cell[0] * ts, cell[1] * ts
        edge_dist = [
            (abs(at[1] - y0), Compass.N),
            (abs(at[0] - (x0 + ts)), Compass.E),
            (abs(at[1] - (y0 + ts)), Compass.S),
            (abs(at[0] - x0), Compass.W),
        ]
        best = min(d for d, _ in edge_dist)
        side = next(side for d, side in edge_dist if d == best)
        return cell, side

    def place(self, kind: ObjectKind, at, level: int = 0,
              rotation_deg: float = 0.0, scale: tuple[float, float, float] = (1.0, 1.0, 1.0),
              material_id: str | None = None,
              artifact_kind: str | None = None, artifact_ref: str | None = None) -> PlacedObject:
        """Place an object from a continuous position, snapping by class.

        Floor-bound: ``at`` is (x, z) meters, snapped to the containing cell.
        Edge-bound: snapped to the nearest edge of the nearest floor tile,
        rotation following the edge normal. Free: ``at`` is (x, y, z), used
        verbatim. Any ghost state is cleared by placement.
        """
        cls = KIND_CLASS[kind]
        if cls is PlacementClass.FLOOR_BOUND:
            cell = self._snap_cell(at)
            if kind is ObjectKind.FLOOR:
                return self.add_floor_cell(cell, level, material_id)
            return self.add_roof_cell(cell, level, material_id)
        if cls is PlacementClass.EDGE_BOUND:
            cell, side = self._snap_edge(level, at)
            return self.add_edge_object(kind, cell, side, 1, level, material_id)
        return self.add_free_object(kind, at, rotation_deg, scale, material_id,
                                    artifact_kind, artifact_ref)

    # -- mutation --------------------------------------------------------------

    def _sweep_orphaned_edges(self) -> list[int]:
        """Drop edge-bound objects left without a floor within one tile."""
        dropped = []
        for other in list(self._objects.values()):
            if other.placement_class is not PlacementClass.EDGE_BOUND:
                continue
            pose = other.pose
            if any(not self._has_floor_near(pose.level, c) for c in pose.covered_cells()):
                del self._objects[other.id]
                dropped.append(other.id)
        return dropped

    def remove(self, object_id: int) -> list[int]:
        """Remove an object; removing a floor cascades to edge-bound objects
        left without a floor within one tile. Returns all removed ids."""
        obj = self.get(object_id)
        removed = [object_id]
        del self._objects[object_id]
        if obj.kind is ObjectKind.FLOOR:
            del self._floors[(obj.pose.level, obj.pose.cell)]
            removed.extend(self._sweep_orphaned_edges())
        elif obj.kind is ObjectKind.ROOF:
            del self._roofs[(obj.pose.level, obj.pose.cell)]
        return removed

    def transform(self, object_id: int, at=None, level: int | None = None,
                  rotation_deg: float | None = None,
                  scale: tuple[float, float, float] | None = None) -> PlacedObject:
        """Re-pose an object; grid-bound objects re-snap from ``at``."""
        obj = self.get(object_id)
        cls = obj.placement_class
        if cls is PlacementClass.FLOOR_BOUND:
            new_level = obj.pose.level if level is None else level
            self._check_level(new_level)
            cell = obj.pose.cell if at is None else self._snap_cell(at)
            strata = self._floors if obj.kind is ObjectKind.FLOOR else self._roofs
            old_key = (obj.pose.level, obj.pose.cell)
            new_key = (new_level, cell)
            if new_key != old_key:
                if new_key in strata:
                    raise CellOccupied(new_level, cell)
                del strata[old_key]
                strata[new_key] = obj.id
            obj.pose = CellPose(new_level, cell)
            if obj.kind is ObjectKind.FLOOR and new_key != old_key:
                self._sweep_orphaned_edges()  # moving a floor can strand walls
        elif cls is PlacementClass.EDGE_BOUND:
            new_level = obj.pose.level if level is None else level
            self._check_level(new_level)
            if at is not None:
                cell, side = self._snap_edge(new_level, at)
                obj.pose = EdgePose(new_level, cell, side, obj.pose.span)
            else:
                obj.pose = replace(obj.pose, level=new_level)
                for covered in obj.pose.covered_cells():
                    if not self._has_floor_near(new_level, covered):
                        raise NoAdjacentFloor()
        else:
            pose = obj.pose
            position = pose.position if at is None else tuple(float(v) for v in at)
            obj.pose = FreePose(
                position,
                pose.rotation_deg if rotation_deg is None else float(rotation_deg),
                pose.scale if scale is None else tuple(float(v) for v in scale),
            )
        return obj

    def set_lighting(self, **changes) -> LightingSettings:
        self.lighting = replace(self.lighting, **changes)
        return self.lighting

    # -- invariants -------------------------------------------------------------

    def validate(self):
        """Recheck every structural invariant (used by property tests)."""
        floors: dict[tuple[int, Cell], int] = {}
        roofs: dict[tuple[int, Cell], int] = {}
        for obj in self._objects.values():
            assert not obj.ghost, "ghost object present in scene"
            cls = obj.placement_class
            if cls is PlacementClass.FLOOR_BOUND:
                assert isinstance(obj.pose, CellPose)
                key = (obj.pose.level, obj.pose.cell)
                target = floors if obj.kind is ObjectKind.FLOOR else roofs
                assert key not in target, f"double occupancy at {key}"
                target[key] = obj.id
            elif cls is PlacementClass.EDGE_BOUND:
                assert isinstance(obj.pose, EdgePose)
            else:
                assert isinstance(obj.pose, FreePose)
        assert floors == self._floors, "floor stratum out of sync"
        assert roofs == self._roofs, "roof stratum out of sync"
        for obj in self._objects.values():
            if obj.placement_class is PlacementClass.EDGE_BOUND:
                for covered in obj.pose.covered_cells():
                    assert self._has_floor_near(obj.pose.level, covered), (
                        f"edge object {obj.id} detached from floors"
                    )
