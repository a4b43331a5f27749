"""HTTP steering service.

Sessions hold a catalog, one live scene, and an optional stepped growth job.
Layout responses are the canonical document bytes, so a generation request
over HTTP matches the CLI output for the same parameters byte for byte.
Mutations within a session are serialized by a per-session lock; losers of
placement conflicts get 409s.
"""

from __future__ import annotations

import hashlib
import threading
import time
import uuid
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from fastapi import FastAPI, Request, Response, UploadFile
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .bspca import BspParams
from .catalog import Catalog, GroupKey, MetadataFormat, build_catalog, group_by, parse_metadata
from .errors import MuseumGenError
from .footprint import Footprint, load_footprint
from .growth import GrowthState, run_growth, step
from .objexport import export_obj
from .pipeline import (
    bsp_document,
    bsp_document_from_data,
    data_seed_count,
    growth_document,
    room_document,
    start_growth,
)
from .roomgen import RoomRequest, RoomSource
from .scene import ObjectKind, TileScene
from .serialization import LayoutDocument, canonical_json_bytes, export_layout
from .sizing import SizingConstants, room_dimensions


@dataclass
class GrowthJob:
    state: GrowthState
    footprint: Footprint
    mode: str
    pixels: list
    grid_height_m: float
    seed: int = 0


@dataclass
class Session:
    id: str
    scene: TileScene = field(default_factory=TileScene)
    catalog: Catalog | None = None
    generator: str = "manual"
    params: dict = field(default_factory=dict)
    cells = None
    growth_job: GrowthJob | None = None
    log: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class FootprintLibrary:
    """Bundled footprints plus any PNGs dropped into the data directory."""

    def __init__(self, data_dir: Path | None):
        self._sources: dict[str, bytes] = {}
        base = resources.files("museumgen.data").joinpath("footprints")
        for entry in sorted(base.iterdir(), key=lambda e: e.name):
            if entry.name.endswith(".png"):
                self._sources[entry.name[:-4]] = entry.read_bytes()
        if data_dir:
            fp_dir = Path(data_dir) / "footprints"
            if fp_dir.is_dir():
                for path in sorted(fp_dir.glob("*.png")):
                    self._sources[path.stem] = path.read_bytes()

    def ids(self) -> list[str]:
        return sorted(self._sources)

    def png(self, footprint_id: str) -> bytes | None:
        return self._sources.get(footprint_id)

    def load(self, footprint_id: str) -> Footprint | None:
        raw = self._sources.get(footprint_id)
        if raw is None:
            return None
        return load_footprint(raw, footprint_id)


_STATUS = {
    "cell_occupied": 409,
    "unknown_id": 404,
}


def _error_response(exc: MuseumGenError) -> JSONResponse:
    return JSONResponse(status_code=_STATUS.get(exc.code, 422), content=exc.payload())


def _layout_response(raw: bytes, status: int = 200) -> Response:
    return Response(
        content=raw,
        status_code=status,
        media_type="application/json",
        headers={"ETag": hashlib.sha256(raw).hexdigest()},
    )


def create_app(data_dir: str | None = None, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="museumgen", version="0.1.0")
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()
    footprints = FootprintLibrary(Path(data_dir) if data_dir else None)
    snapshot_dir = Path(data_dir) / "sessions" if data_dir else None

    @app.exception_handler(MuseumGenError)
    async def domain_error_handler(request: Request, exc: MuseumGenError):
        return _error_response(exc)

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise UnknownSession(session_id)
        return session

    class UnknownSession(MuseumGenError):
        code = "unknown_session"

        def __init__(self, session_id: str):
            super().__init__(f"no session {session_id!r}")

    @app.exception_handler(UnknownSession)
    async def unknown_session_handler(request: Request, exc: UnknownSession):
        return JSONResponse(status_code=404, content=exc.payload())

    def session_doc(session: Session) -> bytes:
        doc = LayoutDocument(
            generator=session.generator,
            params=session.params,
            scene=session.scene,
            cells=session.cells,
        )
        return export_layout(doc)

    def install_doc(session: Session, doc: LayoutDocument):
        session.scene = doc.scene
        session.generator = doc.generator
        session.params = doc.params
        session.cells = doc.cells
        session.log.append({
            "generator": doc.generator,
            "params": doc.params,
            "timestamp": time.time(),
        })

    # -- sessions -------------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session():
        session = Session(id=uuid.uuid4().hex)
        with registry_lock:
            sessions[session.id] = session
        return {"id": session.id}

    @app.get("/sessions/{session_id}")
    def session_info(session_id: str):
        session = get_session(session_id)
        return {
            "id": session.id,
            "generator": session.generator,
            "objects": len(session.scene),
            "catalog_records": len(session.catalog) if session.catalog else 0,
            "log": session.log,
        }

    # -- catalog ---------------------------------------------------------------

    @app.post("/sessions/{session_id}/catalog", status_code=201)
    async def upload_catalog(session_id: str, manifest: UploadFile,
                             metadata: UploadFile | None = None):
        session = get_session(session_id)
        manifest_text = (await manifest.read()).decode("utf-8")
        refs = [line.strip() for line in manifest_text.splitlines() if line.strip()]
        fragments = []
        if metadata is not None:
            text = (await metadata.read()).decode("utf-8")
            name = (metadata.filename or "").lower()
            fmt = MetadataFormat.JSON if name.endswith(".json") else MetadataFormat.CSV
            fragments = parse_metadata(text, fmt)
        catalog = build_catalog(fragments, refs)
        with session.lock:
            session.catalog = catalog
        groups = {
            key.value: len(group_by(catalog, key)) for key in GroupKey
        }
        return {
            "records": len(catalog.records),
            "unmatched_fragments": list(catalog.unmatched_fragments),
            "groups": groups,
        }

    # -- footprints -------------------------------------------------------------

    @app.get("/footprints")
    def list_footprints():
        return {"footprints": footprints.ids()}

    @app.get("/footprints/{footprint_id}")
    def footprint_png(footprint_id: str):
        raw = footprints.png(footprint_id)
        if raw is None:
            return JSONResponse(status_code=404, content={
                "code": "unknown_footprint", "message": f"no footprint {footprint_id!r}"})
        return Response(content=raw, media_type="image/png")

    @app.get("/footprints/{footprint_id}/mask")
    def footprint_mask(footprint_id: str):
        fp = footprints.load(footprint_id)
        if fp is None:
            return JSONResponse(status_code=404, content={
                "code": "unknown_footprint", "message": f"no footprint {footprint_id!r}"})
        return {
            "id": fp.id,
            "width": 128,
            "height": 128,
            "rows": [[int(v) for v in row] for row in fp.grid],
        }

    # -- generation ---------------------------------------------------------------

    @app.post("/sessions/{session_id}/generate/bsp", status_code=201)
    def generate_bsp(session_id: str, body: dict):
        session = get_session(session_id)
        with session.lock:
            grid_height = float(body.get("grid_height_m", 3.0))
            grid_levels = int(body.get("grid_levels", 1))
            seed = int(body.get("seed", 0))
            if body.get("from_data"):
                if session.catalog is None:
                    raise MuseumGenError("session has no catalog for data-driven generation")
                key = GroupKey(body.get("key", "style"))
                dims = body.get("footprint", [48, 48])
                doc = bsp_document_from_data(
                    session.catalog, key, (int(dims[0]), int(dims[1])),
                    seed, grid_height, grid_levels,
                )
            else:
                params = BspParams(
                    footprint_w=int(body.get("footprint", [48, 48])[0]),
                    footprint_d=int(body.get("footprint", [48, 48])[1]),
                    num_rooms=int(body.get("rooms", 4)),
                    room_min=int(body.get("room_min", 3)),
                    room_max=int(body.get("room_max", 6)),
                    corridor_min=int(body.get("corridor_min", 1)),
                    corridor_max=int(body.get("corridor_max", 2)),
                    seed=seed,
                    max_restarts=int(body.get("max_restarts", 64)),
                )
                doc = bsp_document(params, grid_height, grid_levels)
            install_doc(session, doc)
            return _layout_response(session_doc(session), status=201)

    @app.post("/sessions/{session_id}/generate/room", status_code=201)
    def generate_room_endpoint(session_id: str, body: dict):
        session = get_session(session_id)
        with session.lock:
            grid_height = float(body.get("grid_height_m", 3.0))
            if body.get("from_data"):
                if session.catalog is None:
                    raise MuseumGenError("session has no catalog for data-driven generation")
                key = GroupKey(body.get("key", "style"))
                groups = group_by(session.catalog, key)
                wanted = body.get("group")
                matches = [g for g in groups if str(g.key_value) == str(wanted)] if wanted else groups[:1]
                if not matches:
                    raise MuseumGenError(f"no group {wanted!r} under key {key.value}")
                spec = room_dimensions(matches[0], SizingConstants())
                req = RoomRequest(
                    width_m=spec.width_m, depth_m=spec.depth_m,
                    n_windows=int(body.get("windows", 0)),
                    n_doors=int(body.get("doors", 1)),
                    source=RoomSource.DATA_DRIVEN, group_key=str(matches[0].key_value),
                )
            else:
                req = RoomRequest(
                    width_m=float(body.get("width_m", 4.0)),
                    depth_m=float(body.get("depth_m", 4.0)),
                    n_windows=int(body.get("windows", 0)),
                    n_doors=int(body.get("doors", 1)),
                )
            doc = room_document(req, grid_height)
            install_doc(session, doc)
            return _layout_response(session_doc(session), status=201)

    def growth_snapshot_payload(session: Session) -> dict:
        job = session.growth_job
        return {"job": "growth", "params": _growth_params(job), "snapshot": job.state.snapshot()}

    def _growth_params(job: GrowthJob) -> dict:
        params = {
            "footprint": job.footprint.id,
            "mode": job.mode,
            "seed_pixels": [list(p) for p in job.pixels],
            "grid_height_m": job.grid_height_m,
        }
        if job.mode == "random":
            params["seed"] = job.seed
        return params

    @app.post("/sessions/{session_id}/generate/growth", status_code=201)
    def generate_growth(session_id: str, body: dict):
        session = get_session(session_id)
        with session.lock:
            fp_id = body.get("footprint", "")
            fp = footprints.load(str(fp_id))
            if fp is None:
                return JSONResponse(status_code=404, content={
                    "code": "unknown_footprint", "message": f"no footprint {fp_id!r}"})
            grid_height = float(body.get("grid_height_m", 3.0))
            seeds = body.get("seeds", {})
            mode = seeds.get("mode", "explicit")
            seed = int(seeds.get("seed", 0))
            n = seeds.get("n")
            pixels = seeds.get("pixels")
            if mode == "data":
                if session.catalog is None:
                    raise MuseumGenError("session has no catalog for data-driven generation")
                n = data_seed_count(session.catalog, GroupKey(seeds.get("key", "style")))
            state, used = start_growth(
                fp, mode,
                pixels=[tuple(p) for p in pixels] if pixels else None,
                n=int(n) if n else None, seed=seed,
            )
            job = GrowthJob(state=state, footprint=fp, mode=mode, pixels=used,
                            grid_height_m=grid_height, seed=seed)
            if body.get("step_mode"):
                session.growth_job = job
                return growth_snapshot_payload(session)
            run_growth(state)
            doc = growth_document(fp, mode, pixels=used, seed=seed,
                                  grid_height_m=grid_height, state=state)
            install_doc(session, doc)
            session.growth_job = None
            return _layout_response(session_doc(session), status=201)

    def require_job(session: Session) -> GrowthJob:
        if session.growth_job is None:
            raise MuseumGenError("no stepped growth job in this session")
        return session.growth_job

    @app.get("/sessions/{session_id}/generate/growth")
    def growth_state(session_id: str):
        session = get_session(session_id)
        with session.lock:
            require_job(session)
            return growth_snapshot_payload(session)

    @app.post("/sessions/{session_id}/generate/growth/step")
    def growth_step(session_id: str, body: dict | None = None):
        session = get_session(session_id)
        with session.lock:
            job = require_job(session)
            passes = int((body or {}).get("passes", 1))
            if not job.state.paused and not job.state.terminal:
                for _ in range(max(1, passes)):
                    if not step(job.state):
                        break
            payload = growth_snapshot_payload(session)
            if job.state.terminal:
                doc = growth_document(job.footprint, job.mode, pixels=job.pixels,
                                      seed=job.seed, grid_height_m=job.grid_height_m,
                                      state=job.state)
                install_doc(session, doc)
                payload["layout_ready"] = True
            return payload

    @app.post("/sessions/{session_id}/generate/growth/pause")
    def growth_pause(session_id: str):
        session = get_session(session_id)
        with session.lock:
            job = require_job(session)
            job.state.paused = True
            return {"paused": True, "terminal": job.state.terminal}

    @app.post("/sessions/{session_id}/generate/growth/resume")
    def growth_resume(session_id: str):
        session = get_session(session_id)
        with session.lock:
            job = require_job(session)
            job.state.paused = False
            return {"paused": False, "terminal": job.state.terminal}

    # -- scene ---------------------------------------------------------------------

    @app.get("/sessions/{session_id}/scene")
    def get_scene(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return _layout_response(session_doc(session))

    @app.patch("/sessions/{session_id}/scene/lighting")
    def patch_lighting(session_id: str, body: dict):
        session = get_session(session_id)
        allowed = {"sun_on", "ceiling_on", "spot_on", "temperature_k"}
        changes = {k: v for k, v in body.items() if k in allowed}
        unknown = set(body) - allowed
        if unknown:
            raise MuseumGenError(f"unknown lighting fields: {sorted(unknown)}")
        with session.lock:
            lighting = session.scene.set_lighting(**changes)
            from .scene import kelvin_to_color

            return {
                "sun_on": lighting.sun_on,
                "ceiling_on": lighting.ceiling_on,
                "spot_on": lighting.spot_on,
                "temperature_k": lighting.temperature_k,
                "color": list(kelvin_to_color(lighting.temperature_k)),
            }

    @app.post("/sessions/{session_id}/scene/objects", status_code=201)
    def add_object(session_id: str, body: dict):
        session = get_session(session_id)
        kind_raw = body.get("kind", "")
        try:
            kind = ObjectKind(kind_raw)
        except ValueError:
            raise MuseumGenError(f"unknown object kind {kind_raw!r}") from None
        with session.lock:
            at = body.get("at") or body.get("position")
            if at is None:
                raise MuseumGenError("object placement needs 'at' (grid kinds) or 'position'")
            artifact = body.get("artifact") or {}
            obj = session.scene.place(
                kind,
                tuple(float(v) for v in at),
                level=int(body.get("level", 0)),
                rotation_deg=float(body.get("rotation_deg", 0.0)),
                scale=tuple(float(v) for v in body.get("scale", (1.0, 1.0, 1.0))),
                material_id=body.get("material"),
                artifact_kind=artifact.get("kind"),
                artifact_ref=artifact.get("record"),
            )
            from .serialization import pose_dict

            return {"id": obj.id, "kind": obj.kind.value, "pose": pose_dict(obj.pose)}

    @app.delete("/sessions/{session_id}/scene/objects/{object_id}")
    def delete_object(session_id: str, object_id: int):
        session = get_session(session_id)
        with session.lock:
            removed = session.scene.remove(object_id)
            return {"removed": removed}

    # -- export / snapshots -----------------------------------------------------------

    @app.get("/sessions/{session_id}/export/obj")
    def export_obj_endpoint(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return Response(content=export_obj(session.scene), media_type="text/plain")

    @app.post("/sessions/{session_id}/snapshot", status_code=201)
    def snapshot_session(session_id: str):
        session = get_session(session_id)
        if snapshot_dir is None:
            raise MuseumGenError("service started without --data-dir; snapshots disabled")
        snapshot_dir.mkdir(parents=True, exist_ok=True)
        path = snapshot_dir / f"{session.id}.json"
        with session.lock:
            path.write_bytes(session_doc(session))
        return {"path": str(path)}

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
