"""BSP layout generation and cell-state rasterization."""

import json

import pytest

from museumgen.bspca import (
    BspParams,
    CellState,
    cells_to_scene,
    generate_layout,
    params_from_data,
    partition,
    place_rooms_and_corridors,
    rasterize_states,
)
from museumgen.catalog import GroupKey
from museumgen.errors import EmptyCatalog, InfeasibleParams, RestartExhausted
from museumgen.rng import SplitMix64
from museumgen.scene import ObjectKind
from museumgen.serialization import LayoutDocument, export_layout

from test_sizing import catalog_from_records, random_catalog


def params(**overrides) -> BspParams:
    base = dict(footprint_w=48, footprint_d=48, num_rooms=4, room_min=3,
                room_max=6, corridor_min=1, corridor_max=2, seed=42)
    base.update(overrides)
    return BspParams(**base)


def analytic_census(layout):
    """Oracle: wall-family cell count from rect arithmetic alone.

    Each room ring contributes its 2(w+d) sides and 4 corners; each corridor
    adds only its two long sides (its caps and corners land on room rings,
    which are already counted).
    """
    total = 0
    for x0, y0, x1, y1 in layout.rooms:
        w = x1 - x0 + 1
        d = y1 - y0 + 1
        total += 2 * (w + d) + 4
    for corridor in layout.corridors:
        x0, y0, x1, y1 = corridor.rect
        length = (x1 - x0 + 1) if corridor.axis == "x" else (y1 - y0 + 1)
        total += 2 * length
    return total


class TestPartition:
    def test_single_room_single_leaf(self):
        tree = partition(params(num_rooms=1))
        assert tree.is_leaf
        assert tree.rect == (0, 0, 47, 47)

    def test_deterministic_tree(self):
        p = params(footprint_w=32, footprint_d=32)
        a = json.dumps(partition(p).to_dict())
        b = json.dumps(partition(p).to_dict())
        assert a == b
        assert len(partition(p).leaves()) == 4

    def test_children_partition_parent(self):
        tree = partition(params(num_rooms=6))

        def check(node):
            if node.is_leaf:
                return
            (a, b) = node.children
            ax0, ay0, ax1, ay1 = a.rect
            bx0, by0, bx1, by1 = b.rect
            x0, y0, x1, y1 = node.rect
            area = (x1 - x0 + 1) * (y1 - y0 + 1)
            area_a = (ax1 - ax0 + 1) * (ay1 - ay0 + 1)
            area_b = (bx1 - bx0 + 1) * (by1 - by0 + 1)
            assert area == area_a + area_b
            check(a)
            check(b)

        check(tree)

    def test_infeasible_area_before_rng(self):
        with pytest.raises(InfeasibleParams):
            BspParams(footprint_w=12, footprint_d=12, num_rooms=50, room_min=3).validate()
        with pytest.raises(InfeasibleParams):
            generate_layout(BspParams(footprint_w=12, footprint_d=12, num_rooms=50))

    def test_invalid_params(self):
        for bad in (
            dict(num_rooms=0), dict(room_min=2), dict(room_min=9, room_max=4),
            dict(corridor_min=0), dict(corridor_min=3, corridor_max=2),
        ):
            with pytest.raises(InfeasibleParams):
                generate_layout(params(**bad))


class TestLayout:
    def test_single_leaf_layout(self):
        p = params(num_rooms=1)
        layout = place_rooms_and_corridors(partition(p), p)
        assert len(layout.rooms) == 1
        assert layout.corridors == []

    def test_two_rooms_connected(self):
        p = params(footprint_w=40, footprint_d=20, num_rooms=2)
        layout = generate_layout(p)
        assert len(layout.rooms) == 2
        assert len(layout.corridors) >= 1

    def test_restart_exhausted_on_adversarial_params(self):
        p = params(footprint_w=16, footprint_d=16, num_rooms=2, room_min=5,
                   room_max=5, corridor_min=6, corridor_max=6, max_restarts=8)
        with pytest.raises(RestartExhausted) as err:
            generate_layout(p)
        assert err.value.attempts == 9

    def test_room_count_and_connectivity_sweep(self):
        for rooms in range(1, 13):
            layout = generate_layout(params(num_rooms=rooms, seed=rooms * 7))
            assert len(layout.rooms) == rooms
            grid = rasterize_states(layout)
            assert grid.floor_connected()
            assert grid.enclosure_ok()

    def test_rooms_within_bounds_and_sizes(self):
        layout = generate_layout(params(num_rooms=8, seed=3))
        for x0, y0, x1, y1 in layout.rooms:
            assert 2 <= x0 <= x1 <= 45
            assert 2 <= y0 <= y1 <= 45
            assert 3 <= x1 - x0 + 1 <= 6
            assert 3 <= y1 - y0 + 1 <= 6

    def test_restart_attempt_recorded_and_reproducible(self):
        layout = generate_layout(params(num_rooms=10, seed=11))
        again = generate_layout(params(num_rooms=10, seed=11))
        assert layout.attempt == again.attempt
        assert layout.rooms == again.rooms
        assert [c.rect for c in layout.corridors] == [c.rect for c in again.corridors]


class TestDeterminismAndVariety:
    def test_byte_identical_documents(self):
        rng = SplitMix64(909)
        for _ in range(5):
            p = params(num_rooms=rng.randint(2, 8), seed=rng.next_u64())
            docs = []
            for _ in range(2):
                layout = generate_layout(p)
                grid = rasterize_states(layout)
                scene = cells_to_scene(grid)
                docs.append(export_layout(LayoutDocument(
                    "bspca", layout.params.to_dict(), scene, grid)))
            assert docs[0] == docs[1]

    def test_seed_variety(self):
        layouts = set()
        for seed in range(10):
            layout = generate_layout(params(seed=seed))
            layouts.add(json.dumps(layout.to_dict(), sort_keys=True))
        assert len(layouts) >= 9


class TestRasterize:
    def test_single_room_census(self):
        # one 4x3-interior room: ring is 2*(4+3) walls plus 4 corner posts
        p = params(footprint_w=12, footprint_d=12, num_rooms=1, room_min=3, room_max=8, seed=5)
        layout = generate_layout(p)
        (x0, y0, x1, y1) = layout.rooms[0]
        w, d = x1 - x0 + 1, y1 - y0 + 1
        grid = rasterize_states(layout)
        counts = grid.counts()
        assert counts[CellState.FLOOR] == w * d
        assert counts[CellState.CORNER_WALL] == 4
        wall_family = (counts[CellState.WALL] + counts[CellState.CORNER_WALL]
                       + counts[CellState.DOOR] + counts[CellState.WINDOW])
        assert wall_family == 2 * (w + d) + 4

    def test_two_rooms_one_corridor_two_doors(self):
        p = params(footprint_w=40, footprint_d=20, num_rooms=2, seed=1)
        layout = generate_layout(p)
        assert len(layout.corridors) == 1
        counts = rasterize_states(layout).counts()
        assert counts[CellState.DOOR] == 2

    def test_census_on_random_layouts(self):
        rng = SplitMix64(31337)
        for _ in range(25):
            p = params(
                footprint_w=rng.randint(24, 64),
                footprint_d=rng.randint(24, 64),
                num_rooms=rng.randint(1, 8),
                seed=rng.next_u64(),
            )
            try:
                layout = generate_layout(p)
            except RestartExhausted:
                continue
            counts = rasterize_states(layout).counts()
            wall_family = (counts[CellState.WALL] + counts[CellState.CORNER_WALL]
                           + counts[CellState.DOOR] + counts[CellState.WINDOW])
            assert wall_family == analytic_census(layout)
            assert counts[CellState.CORNER_WALL] == 4 * len(layout.rooms)
            floor_area = sum(
                (r[2] - r[0] + 1) * (r[3] - r[1] + 1) for r in layout.rooms
            ) + sum(
                (c.rect[2] - c.rect[0] + 1) * (c.rect[3] - c.rect[1] + 1)
                for c in layout.corridors
            )
            assert counts[CellState.FLOOR] == floor_area
            assert counts[CellState.DOOR] == 2 * len(layout.corridors)

    def test_empty_layout_all_empty(self):
        from museumgen.bspca import BspLayout, BspNode

        p = params(num_rooms=1)
        layout = BspLayout(params=p, attempt=0, tree=BspNode((0, 0, 47, 47)),
                           rooms=[], corridors=[])
        counts = rasterize_states(layout).counts()
        assert counts[CellState.EMPTY] == 48 * 48

    def test_windows_only_on_exterior_walls(self):
        layout = generate_layout(params(num_rooms=5, seed=99))
        grid = rasterize_states(layout)
        deltas = {"n": (0, -1), "e": (1, 0), "s": (0, 1), "w": (-1, 0)}
        for y in range(grid.depth):
            for x in range(grid.width):
                state, orientation = grid.get(x, y)
                if state is CellState.WINDOW:
                    dx, dy = deltas[orientation.value]
                    # faces its floor on one side, open space on the other
                    assert grid.state_at(x + dx, y + dy) is CellState.FLOOR
                    assert grid.state_at(x - dx, y - dy) is CellState.EMPTY


class TestCellsToScene:
    def test_roof_count_equals_floor_count(self):
        layout = generate_layout(params(num_rooms=4, seed=8))
        grid = rasterize_states(layout)
        scene = cells_to_scene(grid)
        kinds = [o.kind for o in scene.objects()]
        floors = kinds.count(ObjectKind.FLOOR)
        assert floors == grid.counts()[CellState.FLOOR]
        assert kinds.count(ObjectKind.ROOF) == floors

    def test_tile_count_matches_cells(self):
        layout = generate_layout(params(num_rooms=3, seed=14))
        grid = rasterize_states(layout)
        scene = cells_to_scene(grid)
        counts = grid.counts()
        non_empty = sum(v for k, v in counts.items() if k is not CellState.EMPTY)
        assert len(scene.objects()) == non_empty + counts[CellState.FLOOR]  # roofs

    def test_multi_level_duplicates_plan(self):
        layout = generate_layout(params(num_rooms=2, seed=4, footprint_w=24, footprint_d=24))
        grid = rasterize_states(layout)
        one = cells_to_scene(grid, grid_levels=1)
        two = cells_to_scene(grid, grid_levels=2)
        assert len(two.objects()) == 2 * len(one.objects())
        levels = {o.pose.level for o in two.objects()}
        assert levels == {0, 1}

    def test_scene_validates(self):
        layout = generate_layout(params(num_rooms=6, seed=21))
        scene = cells_to_scene(rasterize_states(layout))
        scene.validate()


class TestParamsFromData:
    def test_room_count_from_styles(self):
        rng = SplitMix64(5150)
        catalog = catalog_from_records(random_catalog(rng, max_records=20))
        from museumgen.catalog import group_by

        groups = group_by(catalog, GroupKey.STYLE)
        p, room_mins = params_from_data(catalog, GroupKey.STYLE, (64, 64), seed=1)
        assert p.num_rooms == len(groups)
        assert len(room_mins) == len(groups)
        assert all(m >= 3 for m in room_mins)

    def test_empty_catalog(self):
        with pytest.raises(EmptyCatalog):
            params_from_data(catalog_from_records([]), GroupKey.STYLE, (64, 64))

    def test_infeasible_area(self):
        rng = SplitMix64(2)
        catalog = catalog_from_records(random_catalog(rng, max_records=40))
        with pytest.raises(InfeasibleParams):
            params_from_data(catalog, GroupKey.TIME, (10, 10))

    def test_generated_layout_hosts_groups(self):
        rng = SplitMix64(7171)
        catalog = catalog_from_records(random_catalog(rng, max_records=12))
        p, room_mins = params_from_data(catalog, GroupKey.LOCATION, (96, 96), seed=9)
        layout = generate_layout(p, room_mins)
        assert len(layout.rooms) == p.num_rooms
        for (x0, y0, x1, y1), need in zip(layout.rooms, room_mins):
            assert x1 - x0 + 1 >= need
            assert y1 - y0 + 1 >= need
