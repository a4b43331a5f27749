"""museumgen: deterministic procedural museum layouts from personal archives."""

from .catalog import (
    ArtifactGroup,
    ArtifactKind,
    ArtifactRecord,
    ArtifactSize,
    Catalog,
    GroupKey,
    MetadataFormat,
    build_catalog,
    classify_asset,
    group_by,
    parse_metadata,
)
from .sizing import RoomSpec, SizingConstants, artifact_extent, plan_rooms, room_dimensions
from .footprint import Footprint, auto_seed_points, load_footprint
from .growth import GrowthState, growth_to_scene, new_growth, place_seed, run_growth
from .bspca import BspParams, CellGrid, cells_to_scene, generate_layout, rasterize_states
from .roomgen import RoomRequest, generate_room, room_from_group
from .scene import LightingSettings, ObjectKind, ScaleMode, TileScene, kelvin_to_color
from .serialization import LayoutDocument, export_layout, import_layout
from .objexport import export_obj

__version__ = "0.1.0"

__all__ = [
    "ArtifactGroup", "ArtifactKind", "ArtifactRecord", "ArtifactSize", "Catalog",
    "GroupKey", "MetadataFormat", "build_catalog", "classify_asset", "group_by",
    "parse_metadata",
    "RoomSpec", "SizingConstants", "artifact_extent", "plan_rooms", "room_dimensions",
    "Footprint", "auto_seed_points", "load_footprint",
    "GrowthState", "growth_to_scene", "new_growth", "place_seed", "run_growth",
    "BspParams", "CellGrid", "cells_to_scene", "generate_layout", "rasterize_states",
    "RoomRequest", "generate_room", "room_from_group",
    "LightingSettings", "ObjectKind", "ScaleMode", "TileScene", "kelvin_to_color",
    "LayoutDocument", "export_layout", "import_layout",
    "export_obj",
]
