"""Materials manifest: opaque material ids mapped to RGBA and texture slots.

Scenes reference materials by id only; the manifest is a standalone JSON
file so colors can be adjusted (per-channel RGB) without touching layouts.
"""

from __future__ import annotations

import json
from importlib import resources


def default_manifest() -> dict:
    with resources.files("museumgen.data").joinpath("materials.json").open("rb") as fh:
        return json.load(fh)


def load_manifest(path) -> dict:
    with open(path, "rb") as fh:
        return json.load(fh)


def save_manifest(manifest: dict, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def set_rgb(manifest: dict, material_id: str, rgb: tuple[int, int, int]) -> dict:
    """Adjust one material's color channels, keeping alpha and texture."""
    entry = manifest[material_id]
    r, g, b = (min(max(int(v), 0), 255) for v in rgb)
    entry["rgba"] = [r, g, b, entry["rgba"][3]]
    return manifest
