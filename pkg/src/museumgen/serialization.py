"""Layout document serialization: canonical JSON, lossless round trips.

Documents carry a schema version, the generator stamp, the full generation
parameters for replay, the scene, and (for the BSP generator) the cell-state
grid. Canonical form is UTF-8 with sorted keys, compact separators, floats
in shortest round-trip notation, and a trailing newline, so equal documents
are byte-equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bspca import CellGrid, CellState
from .errors import SchemaVersionMismatch, SchemaViolation
from .scene import (
    CellPose,
    Compass,
    EdgePose,
    FreePose,
    LightingSettings,
    ObjectKind,
    PlacementClass,
    ScaleMode,
    TileScene,
)

SCHEMA_VERSION = 1

_STATE_TOKENS = {
    CellState.EMPTY: "empty",
    CellState.FLOOR: "floor",
    CellState.WALL: "wall",
    CellState.CORNER_WALL: "corner",
    CellState.DOOR: "door",
    CellState.WINDOW: "window",
}
_TOKEN_STATES = {v: k for k, v in _STATE_TOKENS.items()}


@dataclass
class LayoutDocument:
    generator: str
    params: dict
    scene: TileScene
    cells: CellGrid | None = None


def canonical_json_bytes(data) -> bytes:
    text = json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def pose_dict(pose) -> dict:
    if isinstance(pose, CellPose):
        return {"type": "cell", "level": pose.level, "cell": list(pose.cell)}
    if isinstance(pose, EdgePose):
        return {
            "type": "edge",
            "level": pose.level,
            "cell": list(pose.cell),
            "side": pose.side.value,
            "span": pose.span,
        }
    return {
        "type": "free",
        "position": [float(v) for v in pose.position],
        "rotation_deg": float(pose.rotation_deg),
        "scale": [float(v) for v in pose.scale],
    }


def scene_to_dict(scene: TileScene) -> dict:
    objects = []
    for obj in scene.objects():
        if obj.ghost:
            continue
        entry = {
            "id": obj.id,
            "kind": obj.kind.value,
            "pose": pose_dict(obj.pose),
            "material": obj.material_id,
        }
        if obj.kind is ObjectKind.ARTIFACT_HOLDER:
            entry["artifact"] = {
                "kind": obj.artifact_kind or "",
                "record": obj.artifact_ref or "",
            }
        objects.append(entry)
    return {
        "grid_levels": scene.grid_levels,
        "grid_height_m": float(scene.grid_height_m),
        "tile_size": scene.tile_size,
        "scale_mode": scene.scale_mode.value,
        "lighting": {
            "sun_on": scene.lighting.sun_on,
            "ceiling_on": scene.lighting.ceiling_on,
            "spot_on": scene.lighting.spot_on,
            "temperature_k": float(scene.lighting.temperature_k),
        },
        "objects": objects,
    }


def cells_to_dict(cells: CellGrid) -> dict:
    rows = []
    for y in range(cells.depth):
        row = []
        for x in range(cells.width):
            state, orientation = cells.get(x, y)
            token = _STATE_TOKENS[state]
            if orientation is not None:
                token = f"{token}:{orientation.value}"
            row.append(token)
        rows.append(row)
    return {"width": cells.width, "depth": cells.depth, "rows": rows}


def export_layout(doc: LayoutDocument) -> bytes:
    data = {
        "schema_version": SCHEMA_VERSION,
        "generator": doc.generator,
        "params": doc.params,
        "scene": scene_to_dict(doc.scene),
    }
    if doc.cells is not None:
        data["cells"] = cells_to_dict(doc.cells)
    return canonical_json_bytes(data)


# --- import -----------------------------------------------------------------


def _expect(condition: bool, path: str, detail: str):
    if not condition:
        raise SchemaViolation(path, detail)


def _get(mapping: dict, key: str, path: str):
    _expect(isinstance(mapping, dict), path, "expected an object")
    _expect(key in mapping, path, f"missing key {key!r}")
    return mapping[key]


def _as_int(value, path: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), path, "expected an integer")
    return value


def _as_float(value, path: str) -> float:
    _expect(
        isinstance(value, (int, float)) and not isinstance(value, bool),
        path, "expected a number",
    )
    return float(value)


def _as_bool(value, path: str) -> bool:
    _expect(isinstance(value, bool), path, "expected a boolean")
    return value


def _as_str(value, path: str) -> str:
    _expect(isinstance(value, str), path, "expected a string")
    return value


def _as_cell(value, path: str) -> tuple[int, int]:
    _expect(isinstance(value, list) and len(value) == 2, path, "expected [x, y]")
    return (_as_int(value[0], path), _as_int(value[1], path))


def _as_vec3(value, path: str) -> tuple[float, float, float]:
    _expect(isinstance(value, list) and len(value) == 3, path, "expected [x, y, z]")
    return tuple(_as_float(v, path) for v in value)


def import_layout(raw: bytes | str) -> LayoutDocument:
    """Parse, validate, and rebuild a layout document.

    Raises SchemaVersionMismatch / SchemaViolation with the offending path.
    """
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("/", f"not valid JSON: {exc.msg}") from None
    _expect(isinstance(data, dict), "/", "expected an object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(version, SCHEMA_VERSION)

    generator = _as_str(_get(data, "generator", "/generator"), "/generator")
    params = _get(data, "params", "/params")
    _expect(isinstance(params, dict), "/params", "expected an object")

    scene_data = _get(data, "scene", "/scene")
    _expect(isinstance(scene_data, dict), "/scene", "expected an object")
    lighting_data = _get(scene_data, "lighting", "/scene/lighting")
    lighting = LightingSettings(
        sun_on=_as_bool(_get(lighting_data, "sun_on", "/scene/lighting/sun_on"), "/scene/lighting/sun_on"),
        ceiling_on=_as_bool(_get(lighting_data, "ceiling_on", "/scene/lighting/ceiling_on"), "/scene/lighting/ceiling_on"),
        spot_on=_as_bool(_get(lighting_data, "spot_on", "/scene/lighting/spot_on"), "/scene/lighting/spot_on"),
        temperature_k=_as_float(_get(lighting_data, "temperature_k", "/scene/lighting/temperature_k"), "/scene/lighting/temperature_k"),
    )
    scale_raw = _as_str(_get(scene_data, "scale_mode", "/scene/scale_mode"), "/scene/scale_mode")
    try:
        scale_mode = ScaleMode(scale_raw)
    except ValueError:
        raise SchemaViolation("/scene/scale_mode", f"unknown scale mode {scale_raw!r}") from None
    tile_size = _as_int(_get(scene_data, "tile_size", "/scene/tile_size"), "/scene/tile_size")
    _expect(tile_size in (1, 2, 4), "/scene/tile_size", "tile size must be 1, 2 or 4")
    grid_levels = _as_int(_get(scene_data, "grid_levels", "/scene/grid_levels"), "/scene/grid_levels")
    _expect(grid_levels >= 1, "/scene/grid_levels", "must be >= 1")
    grid_height = _as_float(_get(scene_data, "grid_height_m", "/scene/grid_height_m"), "/scene/grid_height_m")
    _expect(grid_height > 0, "/scene/grid_height_m", "must be > 0")

    scene = TileScene(
        grid_levels=grid_levels,
        grid_height_m=grid_height,
        tile_size=tile_size,
        scale_mode=scale_mode,
        lighting=lighting,
    )

    objects = _get(scene_data, "objects", "/scene/objects")
    _expect(isinstance(objects, list), "/scene/objects", "expected an array")
    parsed = []
    seen_ids = set()
    for i, entry in enumerate(objects):
        path = f"/scene/objects/{i}"
        _expect(isinstance(entry, dict), path, "expected an object")
        oid = _as_int(_get(entry, "id", f"{path}/id"), f"{path}/id")
        _expect(oid not in seen_ids, f"{path}/id", f"duplicate id {oid}")
        seen_ids.add(oid)
        kind_raw = _as_str(_get(entry, "kind", f"{path}/kind"), f"{path}/kind")
        try:
            kind = ObjectKind(kind_raw)
        except ValueError:
            raise SchemaViolation(f"{path}/kind", f"unknown kind {kind_raw!r}") from None
        material = _as_str(_get(entry, "material", f"{path}/material"), f"{path}/material")
        pose = _get(entry, "pose", f"{path}/pose")
        parsed.append((oid, kind, material, pose, entry, path))

    def pose_type(pose, path):
        return _as_str(_get(pose, "type", f"{path}/pose/type"), f"{path}/pose/type")

    # floors, roofs and free objects first so edge attachments can be checked
    for pass_edges in (False, True):
        for oid, kind, material, pose, entry, path in parsed:
            is_edge = kind in (ObjectKind.WALL, ObjectKind.CORNER_WALL,
                               ObjectKind.DOOR, ObjectKind.WINDOW)
            if is_edge != pass_edges:
                continue
            ptype = pose_type(pose, path)
            ppath = f"{path}/pose"
            if kind in (ObjectKind.FLOOR, ObjectKind.ROOF):
                _expect(ptype == "cell", ppath, f"{kind.value} requires a cell pose")
                level = _as_int(_get(pose, "level", f"{ppath}/level"), f"{ppath}/level")
                cell = _as_cell(_get(pose, "cell", f"{ppath}/cell"), f"{ppath}/cell")
                adder = scene.add_floor_cell if kind is ObjectKind.FLOOR else scene.add_roof_cell
                adder(cell, level, material, object_id=oid)
            elif is_edge:
                _expect(ptype == "edge", ppath, f"{kind.value} requires an edge pose")
                level = _as_int(_get(pose, "level", f"{ppath}/level"), f"{ppath}/level")
                cell = _as_cell(_get(pose, "cell", f"{ppath}/cell"), f"{ppath}/cell")
                side_raw = _as_str(_get(pose, "side", f"{ppath}/side"), f"{ppath}/side")
                try:
                    side = Compass(side_raw)
                except ValueError:
                    raise SchemaViolation(f"{ppath}/side", f"unknown side {side_raw!r}") from None
                span = _as_int(_get(pose, "span", f"{ppath}/span"), f"{ppath}/span")
                _expect(span >= 1, f"{ppath}/span", "span must be >= 1")
                scene.add_edge_object(kind, cell, side, span, level, material, object_id=oid)
            else:
                _expect(ptype == "free", ppath, f"{kind.value} requires a free pose")
                position = _as_vec3(_get(pose, "position", f"{ppath}/position"), f"{ppath}/position")
                rotation = _as_float(_get(pose, "rotation_deg", f"{ppath}/rotation_deg"), f"{ppath}/rotation_deg")
                scale = _as_vec3(_get(pose, "scale", f"{ppath}/scale"), f"{ppath}/scale")
                artifact_kind = artifact_ref = None
                if kind is ObjectKind.ARTIFACT_HOLDER:
                    artifact = _get(entry, "artifact", f"{path}/artifact")
                    artifact_kind = _as_str(_get(artifact, "kind", f"{path}/artifact/kind"), f"{path}/artifact/kind")
                    artifact_ref = _as_str(_get(artifact, "record", f"{path}/artifact/record"), f"{path}/artifact/record")
                scene.add_free_object(kind, position, rotation, scale, material,
                                      artifact_kind, artifact_ref, object_id=oid)

    cells = None
    if "cells" in data:
        cells = _import_cells(data["cells"])
    return LayoutDocument(generator=generator, params=params, scene=scene, cells=cells)


def _import_cells(data) -> CellGrid:
    _expect(isinstance(data, dict), "/cells", "expected an object")
    width = _as_int(_get(data, "width", "/cells/width"), "/cells/width")
    depth = _as_int(_get(data, "depth", "/cells/depth"), "/cells/depth")
    _expect(width >= 1 and depth >= 1, "/cells", "dimensions must be positive")
    rows = _get(data, "rows", "/cells/rows")
    _expect(isinstance(rows, list) and len(rows) == depth, "/cells/rows", f"expected {depth} rows")
    grid = CellGrid(width, depth)
    for y, row in enumerate(rows):
        path = f"/cells/rows/{y}"
        _expect(isinstance(row, list) and len(row) == width, path, f"expected {width} tokens")
        for x, token in enumerate(row):
            tpath = f"{path}/{x}"
            _expect(isinstance(token, str), tpath, "expected a string token")
            state_part, _, orient_part = token.partition(":")
            _expect(state_part in _TOKEN_STATES, tpath, f"unknown state {state_part!r}")
            state = _TOKEN_STATES[state_part]
            orientation = None
            if orient_part:
                try:
                    orientation = Compass(orient_part)
                except ValueError:
                    raise SchemaViolation(tpath, f"unknown orientation {orient_part!r}") from None
            grid.set(x, y, state, orientation)
    return grid
