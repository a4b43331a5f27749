"""Command-line interface.

Subcommands: ``catalog parse``, ``plan``, ``gen growth|bsp|room``,
``export json|obj``, ``serve``. Generation writes ``layout.json`` (canonical
bytes), ``scene.obj`` and a ``preview.png`` figure into the output
directory; ``plan`` writes ``plan.csv`` plus ``plan.png``. Identical inputs
always produce byte-identical JSON/OBJ outputs. Exit codes: 0 success,
1 generation/domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .bspca import BspParams
from .catalog import (
    Catalog,
    EXTENSION_KINDS,
    GroupKey,
    MetadataFormat,
    build_catalog,
    parse_metadata,
)
from .errors import MuseumGenError
from .footprint import Footprint, load_footprint
from .objexport import export_obj
from .pipeline import (
    bsp_document,
    bsp_document_from_data,
    data_seed_count,
    growth_document,
    room_document,
)
from .report import layout_figure, plan_figure, save_figure
from .roomgen import RoomRequest, RoomSource
from .serialization import LayoutDocument, export_layout, import_layout
from .sizing import SizingConstants, plan_rooms

KEY_CHOICES = [k.value for k in GroupKey]


def _load_constants(args) -> SizingConstants:
    config = getattr(args, "config", None)
    if not config:
        return SizingConstants()
    with open(config, "rb") as fh:
        data = json.load(fh)
    return SizingConstants.from_mapping(data.get("sizing", {}))


def _collect_asset_refs(spec: str) -> list[str]:
    """Asset refs from a directory (supported files, sorted), a JSON array
    file, or a newline-separated list file."""
    path = Path(spec)
    if path.is_dir():
        refs = [
            str(p)
            for p in sorted(path.iterdir(), key=lambda p: p.name)
            if p.is_file() and p.suffix.lower() in EXTENSION_KINDS
        ]
        if not refs:
            raise MuseumGenError(f"no supported assets found in {spec}")
        return refs
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        data = json.loads(text)
        if not isinstance(data, list):
            raise MuseumGenError(f"{spec}: expected a JSON array of asset references")
        return [str(item) for item in data]
    return [line.strip() for line in text.splitlines() if line.strip()]


def _load_catalog(args) -> Catalog:
    fragments = []
    if getattr(args, "metadata", None):
        doc = Path(args.metadata).read_text(encoding="utf-8")
        fmt = (
            MetadataFormat.JSON
            if args.metadata.lower().endswith(".json")
            else MetadataFormat.CSV
        )
        fragments = parse_metadata(doc, fmt)
    refs = _collect_asset_refs(args.assets)
    catalog = build_catalog(fragments, refs)
    for name in catalog.unmatched_fragments:
        print(f"warning: metadata row {name!r} matches no asset", file=sys.stderr)
    return catalog


def _load_footprint_file(path: str) -> Footprint:
    p = Path(path)
    return load_footprint(p.read_bytes(), p.stem)


def _write_outputs(doc: LayoutDocument, out_dir: Path, title: str):
    out_dir.mkdir(parents=True, exist_ok=True)
    raw = export_layout(doc)
    (out_dir / "layout.json").write_bytes(raw)
    (out_dir / "scene.obj").write_text(export_obj(doc.scene), encoding="utf-8")
    save_figure(layout_figure(doc.scene, title), out_dir / "preview.png")
    print(f"wrote {out_dir / 'layout.json'}")
    print(f"wrote {out_dir / 'scene.obj'}")
    print(f"wrote {out_dir / 'preview.png'}")


def cmd_catalog_parse(args) -> int:
    catalog = _load_catalog(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for r in catalog.records:
        records.append({
            "name": r.name,
            "kind": r.kind.value,
            "asset_ref": r.asset_ref,
            "artist": r.artist,
            "style": r.style,
            "location": r.location,
            "time": r.time,
            "size": [r.size.width_m, r.size.height_m] + (
                [r.size.depth_m] if r.size and r.size.depth_m is not None else []
            ) if r.size else None,
            "description": r.description,
        })
    from .serialization import canonical_json_bytes

    payload = {
        "records": records,
        "unmatched_fragments": list(catalog.unmatched_fragments),
    }
    path = out_dir / "catalog.json"
    path.write_bytes(canonical_json_bytes(payload))
    print(f"wrote {path} ({len(records)} records)")
    return 0


def cmd_plan(args) -> int:
    catalog = _load_catalog(args)
    constants = _load_constants(args)
    specs = plan_rooms(catalog, GroupKey(args.key), constants)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    csv_path = out_dir / "plan.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["key", "value", "artifacts", "width_m", "depth_m", "wall_sum_m"])
        for spec in specs:
            writer.writerow([
                args.key, spec.group.key_value, len(spec.group.ordered_records),
                repr(spec.width_m), repr(spec.depth_m), repr(spec.wall_sum_m),
            ])
    save_figure(plan_figure(specs), out_dir / "plan.png")
    print(f"wrote {csv_path}")
    print(f"wrote {out_dir / 'plan.png'}")
    for spec in specs:
        print(
            f"  {args.key}={spec.group.key_value}: "
            f"{len(spec.group.ordered_records)} artifacts, "
            f"{spec.width_m:.4g} x {spec.depth_m:.4g} m"
        )
    return 0


def _parse_pixels(text: str):
    pixels = []
    for chunk in text.split(";"):
        x, y = chunk.split(",")
        pixels.append((int(x), int(y)))
    return pixels


def cmd_gen_growth(args) -> int:
    fp = _load_footprint_file(args.footprint)
    spec = args.seeds
    if spec == "data":
        catalog = _load_catalog(args)
        n = data_seed_count(catalog, GroupKey(args.key), _load_constants(args))
        doc = growth_document(fp, "data", n=n, grid_height_m=args.grid_height)
    elif spec.startswith("auto:"):
        doc = growth_document(fp, "auto", n=int(spec.split(":", 1)[1]),
                              grid_height_m=args.grid_height)
    elif spec == "random":
        doc = growth_document(fp, "random", seed=args.seed, grid_height_m=args.grid_height)
    else:
        doc = growth_document(fp, "explicit", pixels=_parse_pixels(spec),
                              grid_height_m=args.grid_height)
    _write_outputs(doc, Path(args.out), f"growth on {fp.id}")
    return 0


def cmd_gen_bsp(args) -> int:
    w, d = (int(v) for v in args.size.lower().split("x"))
    if args.metadata:
        catalog = _load_catalog(args)
        doc = bsp_document_from_data(
            catalog, GroupKey(args.key), (w, d), args.seed,
            args.grid_height, args.levels, _load_constants(args),
        )
    else:
        params = BspParams(
            footprint_w=w, footprint_d=d, num_rooms=args.rooms,
            room_min=args.room_min, room_max=args.room_max,
            corridor_min=args.corridor_min, corridor_max=args.corridor_max,
            seed=args.seed, max_restarts=args.max_restarts,
        )
        doc = bsp_document(params, args.grid_height, args.levels)
    _write_outputs(doc, Path(args.out), f"bsp seed {args.seed}")
    return 0


def cmd_gen_room(args) -> int:
    if args.metadata:
        from .catalog import group_by

        catalog = _load_catalog(args)
        groups = group_by(catalog, GroupKey(args.key))
        wanted = args.group
        matches = [g for g in groups if str(g.key_value) == wanted] if wanted else groups[:1]
        if not matches:
            raise MuseumGenError(f"no group {wanted!r} under key {args.key}")
        from .roomgen import room_from_group
        from .sizing import room_dimensions

        constants = _load_constants(args)
        spec = room_dimensions(matches[0], constants)
        req = RoomRequest(
            width_m=spec.width_m, depth_m=spec.depth_m,
            n_windows=args.windows, n_doors=args.doors,
            source=RoomSource.DATA_DRIVEN, group_key=str(matches[0].key_value),
        )
    else:
        req = RoomRequest(width_m=args.width, depth_m=args.depth,
                          n_windows=args.windows, n_doors=args.doors)
    doc = room_document(req, args.grid_height)
    _write_outputs(doc, Path(args.out), "room")
    return 0


def cmd_export(args) -> int:
    doc = import_layout(Path(args.layout).read_bytes())
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.what == "json":
        path = out_dir / "layout.json"
        path.write_bytes(export_layout(doc))
    else:
        path = out_dir / "scene.obj"
        path.write_text(export_obj(doc.scene), encoding="utf-8")
    print(f"wrote {path}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(data_dir=args.data_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _add_catalog_args(parser, required=True):
    parser.add_argument("--metadata", help="CSV or JSON metadata document")
    parser.add_argument("--assets", required=required,
                        help="asset directory, JSON array file, or newline list file")
    parser.add_argument("--config", help="engine configuration JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="museumgen",
        description="Deterministic procedural museum layouts from personal archives.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_catalog = sub.add_parser("catalog", help="archive ingestion")
    catalog_sub = p_catalog.add_subparsers(dest="subcommand", required=True)
    p_parse = catalog_sub.add_parser("parse", help="parse metadata and assets into a catalog")
    _add_catalog_args(p_parse)
    p_parse.add_argument("--out", default=".", help="output directory")
    p_parse.set_defaults(func=cmd_catalog_parse)

    p_plan = sub.add_parser("plan", help="room count and size report")
    _add_catalog_args(p_plan)
    p_plan.add_argument("--key", choices=KEY_CHOICES, default="style")
    p_plan.add_argument("--out", default=".")
    p_plan.set_defaults(func=cmd_plan)

    p_gen = sub.add_parser("gen", help="run a generator")
    gen_sub = p_gen.add_subparsers(dest="generator", required=True)

    p_growth = gen_sub.add_parser("growth", help="constrained growth inside a footprint")
    p_growth.add_argument("--footprint", required=True, help="128x128 footprint PNG")
    p_growth.add_argument(
        "--seeds", required=True,
        help="'auto:N', 'random', 'data', or explicit pixels 'x,y;x,y'",
    )
    p_growth.add_argument("--seed", type=int, default=0, help="RNG seed for random mode")
    _add_catalog_args(p_growth, required=False)
    p_growth.add_argument("--key", choices=KEY_CHOICES, default="style")
    p_growth.add_argument("--grid-height", type=float, default=3.0)
    p_growth.add_argument("--out", default=".")
    p_growth.set_defaults(func=cmd_gen_growth)

    p_bsp = gen_sub.add_parser("bsp", help="binary space partitioning layout")
    p_bsp.add_argument("--size", default="48x48", help="cell footprint WxD")
    p_bsp.add_argument("--rooms", type=int, default=4)
    p_bsp.add_argument("--room-min", type=int, default=3)
    p_bsp.add_argument("--room-max", type=int, default=6)
    p_bsp.add_argument("--corridor-min", type=int, default=1)
    p_bsp.add_argument("--corridor-max", type=int, default=2)
    p_bsp.add_argument("--seed", type=int, default=0)
    p_bsp.add_argument("--max-restarts", type=int, default=64)
    p_bsp.add_argument("--levels", type=int, default=1)
    _add_catalog_args(p_bsp, required=False)
    p_bsp.add_argument("--key", choices=KEY_CHOICES, default="style")
    p_bsp.add_argument("--grid-height", type=float, default=3.0)
    p_bsp.add_argument("--out", default=".")
    p_bsp.set_defaults(func=cmd_gen_bsp)

    p_room = gen_sub.add_parser("room", help="single room shell with openings")
    p_room.add_argument("--width", type=float, default=4.0)
    p_room.add_argument("--depth", type=float, default=4.0)
    p_room.add_argument("--windows", type=int, default=0)
    p_room.add_argument("--doors", type=int, default=1)
    _add_catalog_args(p_room, required=False)
    p_room.add_argument("--key", choices=KEY_CHOICES, default="style")
    p_room.add_argument("--group", help="group value for data-driven sizing")
    p_room.add_argument("--grid-height", type=float, default=3.0)
    p_room.add_argument("--out", default=".")
    p_room.set_defaults(func=cmd_gen_room)

    p_export = sub.add_parser("export", help="re-export a layout document")
    p_export.add_argument("what", choices=["json", "obj"])
    p_export.add_argument("--layout", required=True, help="layout.json path")
    p_export.add_argument("--out", default=".")
    p_export.set_defaults(func=cmd_export)

    p_serve = sub.add_parser("serve", help="run the HTTP steering service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--data-dir", help="directory for extra footprints and snapshots")
    p_serve.add_argument("--ui-dir", help="directory with the built web console")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def validate_args(args) -> None:
    """Usage-level validation beyond argparse types (exit code 2)."""
    if getattr(args, "generator", None) == "bsp" and not args.metadata:
        if args.rooms < 1:
            raise SystemExit2("--rooms must be >= 1")
        if args.room_min < 3:
            raise SystemExit2("--room-min must be >= 3")
    if getattr(args, "generator", None) == "room" and not args.metadata:
        if args.width < 2 or args.depth < 2:
            raise SystemExit2("--width and --depth must be >= 2")
        if args.windows < 0 or args.doors < 0:
            raise SystemExit2("--windows and --doors must be >= 0")
    if getattr(args, "generator", None) == "growth" and args.seeds == "data":
        if not args.assets:
            raise SystemExit2("--seeds data requires --assets")


class SystemExit2(Exception):
    pass


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        validate_args(args)
    except SystemExit2 as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")
    try:
        return args.func(args)
    except MuseumGenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
