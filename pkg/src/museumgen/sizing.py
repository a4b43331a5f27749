"""Room count and dimension calculation from grouped artifacts.

For every group the along-wall extents of its artifacts are accumulated
together with label and spacing allowances and a fixed two-wall entrance
reserve; halving the total gives the combined length of two perpendicular
walls, which is split into a square room envelope (clamped to a minimum
side so the entrance always fits).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import ArtifactGroup, ArtifactKind, ArtifactRecord, Catalog, GroupKey, group_by

#: Fixed entrance reserve: two parallel 2-meter walls.
ENTRANCE_WALL_M = 2.0
#: Fallback along-wall extent for paintings/sculptures without size data.
DEFAULT_ARTIFACT_M = 1.0


@dataclass(frozen=True)
class SizingConstants:
    """Tunable spacing constants. The entrance reserve and the default
    artifact extent are fixed and not configurable."""

    label_width_m: float = 0.5
    interspace_m: float = 0.5
    holder_width_m: dict = field(
        default_factory=lambda: {
            ArtifactKind.VIDEO: 2.0,
            ArtifactKind.SOUND: 1.0,
            ArtifactKind.TEXT: 1.0,
        }
    )
    min_side_m: float = 2.0
    entrance_wall_m: float = field(default=ENTRANCE_WALL_M, init=False)
    default_artifact_m: float = field(default=DEFAULT_ARTIFACT_M, init=False)

    def __post_init__(self):
        values = [self.label_width_m, self.interspace_m, self.min_side_m]
        values += list(self.holder_width_m.values())
        if any(v <= 0 for v in values):
            raise ValueError("sizing constants must all be > 0")
        for kind in (ArtifactKind.VIDEO, ArtifactKind.SOUND, ArtifactKind.TEXT):
            if kind not in self.holder_width_m:
                raise ValueError(f"holder width missing for {kind.value}")

    @classmethod
    def from_mapping(cls, data: dict) -> "SizingConstants":
        holders = dict(cls().holder_width_m)
        for name, value in data.get("holder_width_m", {}).items():
            holders[ArtifactKind(name)] = float(value)
        return cls(
            label_width_m=float(data.get("label_width_m", 0.5)),
            interspace_m=float(data.get("interspace_m", 0.5)),
            holder_width_m=holders,
            min_side_m=float(data.get("min_side_m", 2.0)),
        )


@dataclass(frozen=True)
class RoomSpec:
    """Envelope of one room: its group, square dimensions, and the combined
    perpendicular-wall length the dimensions were split from."""

    group: ArtifactGroup
    width_m: float
    depth_m: float
    wall_sum_m: float


def artifact_extent(record: ArtifactRecord, c: SizingConstants) -> float:
    """Along-wall extent in meters contributed by one artifact."""
    if record.kind in c.holder_width_m:
        return c.holder_width_m[record.kind]
    if record.size is not None:
        return record.size.width_m
    return c.default_artifact_m


def room_dimensions(group: ArtifactGroup, c: SizingConstants) -> RoomSpec:
    """Accumulate artifact extents plus allowances, halve into two
    perpendicular walls, and split into a square envelope."""
    total = 0.0
    for record in group.ordered_records:
        extent = artifact_extent(record, c)
        total += extent
        total += c.label_width_m + c.interspace_m
        total += extent / 4.0
    total += 2.0 * c.entrance_wall_m
    wall_sum = total / 2.0
    side = max(wall_sum / 2.0, c.min_side_m)
    return RoomSpec(group=group, width_m=side, depth_m=side, wall_sum_m=wall_sum)


def plan_rooms(
    catalog: Catalog, key: GroupKey, c: SizingConstants | None = None
) -> list[RoomSpec]:
    """One RoomSpec per group under the chosen archival key."""
    c = c or SizingConstants()
    return [room_dimensions(group, c) for group in group_by(catalog, key)]
