"""Shared generation pipeline used by both the CLI and the HTTP service.

Both surfaces build layout documents through these functions, so identical
parameters yield byte-identical documents regardless of the entry point.
"""

from __future__ import annotations

from .bspca import (
    BspParams,
    CellGrid,
    cells_to_scene,
    generate_layout,
    params_from_data,
    rasterize_states,
)
from .catalog import Catalog, GroupKey
from .footprint import Footprint, Pixel, auto_seed_points
from .growth import GrowthState, growth_to_scene, new_growth, place_seed, seed_random
from .roomgen import RoomRequest, generate_room
from .scene import LightingSettings
from .serialization import LayoutDocument
from .sizing import SizingConstants, plan_rooms


def bsp_document(params: BspParams, grid_height_m: float = 3.0, grid_levels: int = 1,
                 room_mins: tuple[int, ...] | None = None,
                 data_key: str | None = None,
                 lighting: LightingSettings | None = None) -> LayoutDocument:
    layout = generate_layout(params, room_mins)
    grid = rasterize_states(layout)
    scene = cells_to_scene(grid, grid_height_m, grid_levels, lighting)
    doc_params = {
        "bsp": params.to_dict(),
        "grid_height_m": float(grid_height_m),
        "grid_levels": grid_levels,
        "attempt": layout.attempt,
    }
    if room_mins is not None:
        doc_params["room_mins"] = list(room_mins)
    if data_key is not None:
        doc_params["group_key"] = data_key
    return LayoutDocument(generator="bspca", params=doc_params, scene=scene, cells=grid)


def bsp_document_from_data(catalog: Catalog, key: GroupKey, fp_dims: tuple[int, int],
                           seed: int = 0, grid_height_m: float = 3.0,
                           grid_levels: int = 1,
                           constants: SizingConstants | None = None) -> LayoutDocument:
    params, room_mins = params_from_data(catalog, key, fp_dims, seed, constants)
    return bsp_document(params, grid_height_m, grid_levels, room_mins, key.value)


def growth_document(footprint: Footprint, mode: str,
                    pixels: list[Pixel] | None = None,
                    n: int | None = None, seed: int = 0,
                    grid_height_m: float = 3.0,
                    lighting: LightingSettings | None = None,
                    state: GrowthState | None = None) -> LayoutDocument:
    """Run growth to completion (or realize a finished ``state``) and wrap it.

    ``mode`` is one of explicit / auto / random / data; the seed pixels
    actually used are always echoed in the document parameters.
    """
    if state is None:
        state, pixels = start_growth(footprint, mode, pixels, n, seed)
        from .growth import run_growth

        run_growth(state)
    else:
        pixels = [(r.min_x, r.min_y) for r in state.rooms] if pixels is None else pixels
    scene = growth_to_scene(state, grid_height_m, lighting)
    doc_params = {
        "footprint": footprint.id,
        "mode": mode,
        "seed_pixels": [list(p) for p in pixels],
        "grid_height_m": float(grid_height_m),
    }
    if mode == "random":
        doc_params["seed"] = seed
    return LayoutDocument(generator="growth", params=doc_params, scene=scene)


def start_growth(footprint: Footprint, mode: str,
                 pixels: list[Pixel] | None = None,
                 n: int | None = None, seed: int = 0) -> tuple[GrowthState, list[Pixel]]:
    """Create a growth state with seeds placed but no passes run."""
    state = new_growth(footprint)
    if mode == "explicit":
        if not pixels:
            raise ValueError("explicit mode needs seed pixels")
        for p in pixels:
            place_seed(state, tuple(p))
        used = [tuple(p) for p in pixels]
    elif mode in ("auto", "data"):
        if not n or n < 1:
            raise ValueError(f"{mode} mode needs a seed count >= 1")
        used = auto_seed_points(footprint, n)
        for p in used:
            place_seed(state, p)
    elif mode == "random":
        used = seed_random(state, seed)
    else:
        raise ValueError(f"unknown growth mode {mode!r}")
    return state, used


def room_document(req: RoomRequest, grid_height_m: float = 3.0,
                  lighting: LightingSettings | None = None) -> LayoutDocument:
    scene = generate_room(req, grid_height_m, lighting)
    floors = [o for o in scene.objects() if o.kind.value == "floor"]
    xs = [o.pose.cell[0] for o in floors]
    ys = [o.pose.cell[1] for o in floors]
    doc_params = {
        "width_m": float(req.width_m),
        "depth_m": float(req.depth_m),
        "n_windows": req.n_windows,
        "n_doors": req.n_doors,
        "source": req.source.value,
        "rounded": [max(xs) + 1, max(ys) + 1],
        "grid_height_m": float(grid_height_m),
    }
    if req.group_key is not None:
        doc_params["group_key"] = req.group_key
    return LayoutDocument(generator="room", params=doc_params, scene=scene)


def data_seed_count(catalog: Catalog, key: GroupKey,
                    constants: SizingConstants | None = None) -> int:
    """Seed count for data-driven growth: one per group."""
    return len(plan_rooms(catalog, key, constants))
