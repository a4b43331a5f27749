"""CLI and HTTP surfaces: shared-core byte identity, status codes, stepping."""

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from museumgen.cli import main
from museumgen.server import create_app

DATA = Path(__file__).parent / "data"
FOOTPRINT_ID = "fp01_square"


def bundled_footprint_path() -> Path:
    from importlib import resources

    base = resources.files("museumgen.data").joinpath("footprints")
    return Path(str(base / f"{FOOTPRINT_ID}.png"))


def run_cli(*argv) -> int:
    return main([str(a) for a in argv])


@pytest.fixture()
def client(tmp_path):
    app = create_app(data_dir=str(tmp_path / "srv"))
    with TestClient(app) as c:
        yield c


@pytest.fixture()
def session(client):
    return client.post("/sessions").json()["id"]


class TestCli:
    def test_catalog_parse(self, tmp_path, capsys):
        code = run_cli(
            "catalog", "parse", "--metadata", DATA / "collection.csv",
            "--assets", DATA / "assets", "--out", tmp_path,
        )
        assert code == 0
        payload = json.loads((tmp_path / "catalog.json").read_text())
        assert len(payload["records"]) == 12
        assert payload["unmatched_fragments"] == []

    def test_plan_writes_csv_and_figure(self, tmp_path):
        code = run_cli(
            "plan", "--metadata", DATA / "collection.csv", "--assets", DATA / "assets",
            "--key", "style", "--out", tmp_path,
        )
        assert code == 0
        rows = (tmp_path / "plan.csv").read_text().strip().splitlines()
        assert len(rows) == 1 + 3  # header + three styles
        assert (tmp_path / "plan.png").stat().st_size > 0

    def test_gen_bsp_deterministic(self, tmp_path):
        for sub in ("a", "b"):
            code = run_cli(
                "gen", "bsp", "--seed", 42, "--rooms", 4, "--out", tmp_path / sub,
            )
            assert code == 0
        a = (tmp_path / "a" / "layout.json").read_bytes()
        b = (tmp_path / "b" / "layout.json").read_bytes()
        assert a == b
        assert (tmp_path / "a" / "scene.obj").read_bytes() == (
            tmp_path / "b" / "scene.obj").read_bytes()
        assert (tmp_path / "a" / "preview.png").stat().st_size > 0

    def test_gen_growth_outputs(self, tmp_path):
        code = run_cli(
            "gen", "growth", "--footprint", bundled_footprint_path(),
            "--seeds", "auto:2", "--out", tmp_path,
        )
        assert code == 0
        doc = json.loads((tmp_path / "layout.json").read_text())
        assert doc["generator"] == "growth"
        assert len(doc["params"]["seed_pixels"]) == 2
        assert (tmp_path / "scene.obj").read_text().startswith("g floor")

    def test_gen_room(self, tmp_path):
        code = run_cli("gen", "room", "--width", 4, "--depth", 3,
                       "--windows", 3, "--doors", 1, "--out", tmp_path)
        assert code == 0
        doc = json.loads((tmp_path / "layout.json").read_text())
        assert doc["params"]["rounded"] == [4, 3]

    def test_usage_error_exit_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            run_cli("gen", "bsp", "--rooms", 0)
        assert err.value.code == 2

    def test_unknown_flag_exit_2(self):
        with pytest.raises(SystemExit) as err:
            run_cli("gen", "bsp", "--bogus", 1)
        assert err.value.code == 2

    def test_generation_error_exit_1(self, tmp_path, capsys):
        code = run_cli("gen", "bsp", "--rooms", 50, "--size", "12x12", "--out", tmp_path)
        assert code == 1
        assert "infeasible" in capsys.readouterr().err

    def test_export_roundtrip(self, tmp_path):
        run_cli("gen", "bsp", "--seed", 7, "--rooms", 3, "--out", tmp_path / "gen")
        code = run_cli("export", "json", "--layout", tmp_path / "gen" / "layout.json",
                       "--out", tmp_path / "re")
        assert code == 0
        assert (tmp_path / "re" / "layout.json").read_bytes() == (
            tmp_path / "gen" / "layout.json").read_bytes()
        code = run_cli("export", "obj", "--layout", tmp_path / "gen" / "layout.json",
                       "--out", tmp_path / "re")
        assert code == 0
        assert (tmp_path / "re" / "scene.obj").read_bytes() == (
            tmp_path / "gen" / "scene.obj").read_bytes()

    def test_explicit_growth_seeds(self, tmp_path):
        code = run_cli("gen", "growth", "--footprint", bundled_footprint_path(),
                       "--seeds", "40,40;80,80", "--out", tmp_path)
        assert code == 0
        doc = json.loads((tmp_path / "layout.json").read_text())
        assert doc["params"]["seed_pixels"] == [[40, 40], [80, 80]]

    def test_data_driven_bsp(self, tmp_path):
        code = run_cli(
            "gen", "bsp", "--metadata", DATA / "collection.csv",
            "--assets", DATA / "assets", "--key", "style", "--size", "64x64",
            "--seed", 5, "--out", tmp_path,
        )
        assert code == 0
        doc = json.loads((tmp_path / "layout.json").read_text())
        assert doc["params"]["bsp"]["num_rooms"] == 3
        assert doc["params"]["group_key"] == "style"


class TestHttp:
    def test_create_and_fetch_session(self, client, session):
        info = client.get(f"/sessions/{session}").json()
        assert info["id"] == session
        assert client.get("/sessions/nope/scene").status_code == 404

    def test_footprints_listing_and_png(self, client):
        ids = client.get("/footprints").json()["footprints"]
        assert len(ids) == 20 and FOOTPRINT_ID in ids
        png = client.get(f"/footprints/{FOOTPRINT_ID}")
        assert png.status_code == 200
        assert png.content[:8] == b"\x89PNG\r\n\x1a\n"
        mask = client.get(f"/footprints/{FOOTPRINT_ID}/mask").json()
        assert mask["width"] == 128
        assert sum(sum(r) for r in mask["rows"]) > 0
        assert client.get("/footprints/nope").status_code == 404

    def test_bsp_http_equals_cli_bytes(self, client, session, tmp_path):
        run_cli("gen", "bsp", "--seed", 42, "--rooms", 4, "--out", tmp_path)
        cli_bytes = (tmp_path / "layout.json").read_bytes()
        resp = client.post(f"/sessions/{session}/generate/bsp",
                           json={"seed": 42, "rooms": 4})
        assert resp.status_code == 201
        assert resp.content == cli_bytes
        scene = client.get(f"/sessions/{session}/scene")
        assert scene.content == cli_bytes
        assert scene.headers["ETag"]

    def test_growth_http_equals_cli_bytes(self, client, session, tmp_path):
        run_cli("gen", "growth", "--footprint", bundled_footprint_path(),
                "--seeds", "auto:2", "--out", tmp_path)
        cli_bytes = (tmp_path / "layout.json").read_bytes()
        resp = client.post(
            f"/sessions/{session}/generate/growth",
            json={"footprint": FOOTPRINT_ID, "seeds": {"mode": "auto", "n": 2}},
        )
        assert resp.status_code == 201
        assert resp.content == cli_bytes

    def test_growth_seed_outside_interior_422(self, client, session):
        resp = client.post(
            f"/sessions/{session}/generate/growth",
            json={"footprint": FOOTPRINT_ID, "seeds": {"mode": "explicit", "pixels": [[0, 0]]}},
        )
        assert resp.status_code == 422
        assert resp.json()["code"] == "seed_outside_interior"

    def test_growth_step_pause_resume(self, client, session):
        resp = client.post(
            f"/sessions/{session}/generate/growth",
            json={"footprint": FOOTPRINT_ID, "step_mode": True,
                  "seeds": {"mode": "explicit", "pixels": [[40, 40], [80, 80]]}},
        )
        assert resp.status_code == 201
        snap = resp.json()["snapshot"]
        assert snap["terminal"] is False
        assert [r["rect"] for r in snap["rooms"]] == [[40, 40, 40, 40], [80, 80, 80, 80]]

        stepped = client.post(f"/sessions/{session}/generate/growth/step", json={}).json()
        r0 = stepped["snapshot"]["rooms"][0]["rect"]
        assert r0 == [39, 39, 41, 41]  # one pass grows every side by one

        assert client.post(f"/sessions/{session}/generate/growth/pause").json()["paused"]
        frozen = client.post(f"/sessions/{session}/generate/growth/step", json={}).json()
        assert frozen["snapshot"]["rooms"][0]["rect"] == r0  # paused: no advance
        client.post(f"/sessions/{session}/generate/growth/resume")

        while True:
            state = client.post(f"/sessions/{session}/generate/growth/step",
                                json={"passes": 16}).json()
            if state["snapshot"]["terminal"]:
                break
        assert state.get("layout_ready") is True
        doc = client.get(f"/sessions/{session}/scene").json()
        assert doc["generator"] == "growth"
        assert doc["params"]["seed_pixels"] == [[40, 40], [80, 80]]

    def test_room_endpoint(self, client, session):
        resp = client.post(f"/sessions/{session}/generate/room",
                           json={"width_m": 4, "depth_m": 3, "windows": 3, "doors": 1})
        assert resp.status_code == 201
        doc = json.loads(resp.content)
        kinds = [o["kind"] for o in doc["scene"]["objects"]]
        assert kinds.count("window") == 3

    def test_lighting_patch(self, client, session):
        resp = client.patch(f"/sessions/{session}/scene/lighting",
                            json={"temperature_k": 2700, "sun_on": False})
        assert resp.status_code == 200
        body = resp.json()
        assert body["temperature_k"] == 2700
        assert body["sun_on"] is False
        assert body["color"] == [255, 167, 87]
        doc = client.get(f"/sessions/{session}/scene").json()
        assert doc["scene"]["lighting"]["temperature_k"] == 2700.0

    def test_object_placement_conflict_409(self, client, session):
        resp = client.post(f"/sessions/{session}/scene/objects",
                           json={"kind": "floor", "at": [3.4, 5.7]})
        assert resp.status_code == 201
        assert resp.json()["pose"]["cell"] == [3, 5]
        again = client.post(f"/sessions/{session}/scene/objects",
                            json={"kind": "floor", "at": [3.9, 5.1]})
        assert again.status_code == 409
        assert again.json()["code"] == "cell_occupied"

    def test_object_delete_and_404(self, client, session):
        created = client.post(f"/sessions/{session}/scene/objects",
                              json={"kind": "floor", "at": [0.5, 0.5]}).json()
        wall = client.post(f"/sessions/{session}/scene/objects",
                           json={"kind": "wall", "at": [0.5, 0.05]}).json()
        resp = client.delete(f"/sessions/{session}/scene/objects/{created['id']}")
        assert resp.status_code == 200
        assert sorted(resp.json()["removed"]) == sorted([created["id"], wall["id"]])
        assert client.delete(
            f"/sessions/{session}/scene/objects/{created['id']}").status_code == 404

    def test_infeasible_params_422(self, client, session):
        resp = client.post(f"/sessions/{session}/generate/bsp",
                           json={"rooms": 50, "footprint": [12, 12]})
        assert resp.status_code == 422
        assert resp.json()["code"] == "infeasible_params"

    def test_catalog_upload_and_data_generation(self, client, session, tmp_path):
        manifest = "\n".join(
            str(p) for p in sorted((DATA / "assets").iterdir(), key=lambda p: p.name)
        )
        resp = client.post(
            f"/sessions/{session}/catalog",
            files={
                "manifest": ("assets.txt", manifest.encode()),
                "metadata": ("collection.csv", (DATA / "collection.csv").read_bytes()),
            },
        )
        assert resp.status_code == 201
        body = resp.json()
        assert body["records"] == 12
        assert body["groups"]["style"] == 3
        gen = client.post(
            f"/sessions/{session}/generate/bsp",
            json={"from_data": True, "key": "style", "footprint": [64, 64], "seed": 5},
        )
        assert gen.status_code == 201
        doc = json.loads(gen.content)
        assert doc["params"]["bsp"]["num_rooms"] == 3

    def test_export_obj_endpoint(self, client, session, tmp_path):
        client.post(f"/sessions/{session}/generate/room",
                    json={"width_m": 4, "depth_m": 3})
        resp = client.get(f"/sessions/{session}/export/obj")
        assert resp.status_code == 200
        run_cli("gen", "room", "--width", 4, "--depth", 3, "--out", tmp_path)
        assert resp.text == (tmp_path / "scene.obj").read_text()

    def test_snapshot_persistence(self, client, session, tmp_path):
        client.post(f"/sessions/{session}/generate/bsp", json={"seed": 1, "rooms": 2})
        resp = client.post(f"/sessions/{session}/snapshot")
        assert resp.status_code == 201
        saved = Path(resp.json()["path"])
        assert saved.read_bytes() == client.get(f"/sessions/{session}/scene").content
