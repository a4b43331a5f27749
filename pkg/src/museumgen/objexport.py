"""Wavefront OBJ geometry for tile scenes.

Every placed object emits one axis-aligned box (8 vertices, 12 triangles,
counter-clockwise winding, Y up, meters). Slabs and wall planes are 0.1 m
thick; vertical elements span the full grid height of their level. Objects
are grouped by kind and ordered by id within a group, so equal scenes export
byte-identical text. Model scale divides all coordinates by 20.
"""

from __future__ import annotations

from .scene import (
    CellPose,
    Compass,
    EdgePose,
    FreePose,
    ObjectKind,
    PlacedObject,
    SLAB_THICKNESS,
    TileScene,
)

_KIND_ORDER = tuple(ObjectKind)

# box corners in (x0/x1, y0/y1, z0/z1) order; triangles CCW from outside
_FACES = (
    (1, 4, 3), (1, 3, 2),  # z0
    (5, 6, 7), (5, 7, 8),  # z1
    (1, 2, 6), (1, 6, 5),  # y0
    (4, 8, 7), (4, 7, 3),  # y1
    (1, 5, 8), (1, 8, 4),  # x0
    (2, 3, 7), (2, 7, 6),  # x1
)


def _box(obj: PlacedObject, scene: TileScene) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """(min, max) corners of the object's box in human-scale meters."""
    ts = float(scene.tile_size)
    height = scene.grid_height_m
    half = SLAB_THICKNESS / 2.0
    pose = obj.pose
    if isinstance(pose, CellPose):
        x, y = pose.cell
        base = pose.level * height
        if obj.kind is ObjectKind.FLOOR:
            y0, y1 = base, base + SLAB_THICKNESS
        else:  # roof mirrors the floor at the top of its level
            y0, y1 = base + height - SLAB_THICKNESS, base + height
        return (x * ts, y0, y * ts), ((x + 1) * ts, y1, (y + 1) * ts)
    if isinstance(pose, EdgePose):
        x, y = pose.cell
        base = pose.level * height
        top = base + height
        if obj.kind is ObjectKind.CORNER_WALL:
            corner = {
                Compass.N: (x * ts, y * ts),
                Compass.E: ((x + 1) * ts, y * ts),
                Compass.S: ((x + 1) * ts, (y + 1) * ts),
                Compass.W: (x * ts, (y + 1) * ts),
            }[pose.side]
            return (corner[0] - half, base, corner[1] - half), (
                corner[0] + half, top, corner[1] + half)
        length = pose.span * ts
        if pose.side is Compass.N:
            return (x * ts, base, y * ts - half), (x * ts + length, top, y * ts + half)
        if pose.side is Compass.S:
            return (x * ts, base, (y + 1) * ts - half), (x * ts + length, top, (y + 1) * ts + half)
        if pose.side is Compass.E:
            return ((x + 1) * ts - half, base, y * ts), ((x + 1) * ts + half, top, y * ts + length)
        return (x * ts - half, base, y * ts), (x * ts + half, top, y * ts + length)
    assert isinstance(pose, FreePose)
    px, py, pz = pose.position
    sx, sy, sz = pose.scale
    return (px - sx / 2.0, py, pz - sz / 2.0), (px + sx / 2.0, py + sy, pz + sz / 2.0)


def _fmt(value: float) -> str:
    return repr(float(value))


def export_obj(scene: TileScene) -> str:
    """Deterministic OBJ text (v/f/g records only) for the whole scene."""
    lines: list[str] = []
    index = 0
    by_kind: dict[ObjectKind, list[PlacedObject]] = {}
    for obj in scene.objects():
        if obj.ghost:
            continue
        by_kind.setdefault(obj.kind, []).append(obj)

    for kind in _KIND_ORDER:
        objs = by_kind.get(kind)
        if not objs:
            continue
        lines.append(f"g {kind.value}")
        for obj in objs:
            (x0, y0, z0), (x1, y1, z1) = _box(obj, scene)
            corners = (
                (x0, y0, z0), (x1, y0, z0), (x1, y1, z0), (x0, y1, z0),
                (x0, y0, z1), (x1, y0, z1), (x1, y1, z1), (x0, y1, z1),
            )
            for cx, cy, cz in corners:
                lines.append(
                    "v "
                    + " ".join(
                        _fmt(scene.scale_mode.to_world(v)) for v in (cx, cy, cz)
                    )
                )
            for a, b, c in _FACES:
                lines.append(f"f {index + a} {index + b} {index + c}")
            index += 8
    return "\n".join(lines) + "\n" if lines else ""
