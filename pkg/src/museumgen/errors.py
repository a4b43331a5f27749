"""Exception hierarchy shared by all museumgen modules.

Every error carries a stable machine-readable ``code`` (used by the CLI for
exit-status mapping and by the HTTP service for error bodies) plus a human
message.
"""

from __future__ import annotations


class MuseumGenError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def payload(self) -> dict:
        return {"code": self.code, "message": str(self)}


# --- catalog ---------------------------------------------------------------

class UnsupportedFormat(MuseumGenError):
    code = "unsupported_format"

    def __init__(self, extension: str, supported: tuple[str, ...]):
        self.extension = extension
        self.supported = supported
        super().__init__(
            f"unsupported asset format {extension!r}; supported: {', '.join(supported)}"
        )


class MalformedDocument(MuseumGenError):
    code = "malformed_document"

    def __init__(self, position: str, detail: str = ""):
        self.position = position
        msg = f"malformed metadata document at {position}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class UnknownColumn(MuseumGenError):
    code = "unknown_column"

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown metadata column {name!r}")


class BadSizeSyntax(MuseumGenError):
    code = "bad_size_syntax"

    def __init__(self, value: str):
        self.value = value
        super().__init__(
            f"bad size value {value!r}; expected <float>x<float> or "
            f"<float>x<float>x<float> in meters"
        )


class DuplicateName(MuseumGenError):
    code = "duplicate_name"

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"duplicate artifact name {name!r}")


class EmptyCatalog(MuseumGenError):
    code = "empty_catalog"

    def __init__(self):
        super().__init__("catalog has no records")


# --- footprint --------------------------------------------------------------

class WrongDimensions(MuseumGenError):
    code = "wrong_dimensions"

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        super().__init__(f"footprint must be 128x128 pixels, got {width}x{height}")


class MultipleComponents(MuseumGenError):
    code = "multiple_components"

    def __init__(self, count: int):
        self.count = count
        super().__init__(f"footprint interior must be one connected region, found {count}")


class TooSmallInterior(MuseumGenError):
    code = "too_small_interior"

    def __init__(self, count: int):
        self.count = count
        super().__init__(f"footprint interior has {count} pixels, need at least 25")


class TooManySeeds(MuseumGenError):
    code = "too_many_seeds"

    def __init__(self, requested: int, maximum: int):
        self.requested = requested
        self.maximum = maximum
        super().__init__(f"cannot place {requested} seeds (valid range 1..{maximum})")


# --- growth -----------------------------------------------------------------

class SeedOutsideInterior(MuseumGenError):
    code = "seed_outside_interior"

    def __init__(self, pixel: tuple[int, int]):
        self.pixel = pixel
        super().__init__(f"seed pixel {pixel} is outside the footprint interior")


class RegionNotClean(MuseumGenError):
    """The 3x3 block around a seed overlaps another room or the exterior."""

    code = "region_not_clean"

    def __init__(self, pixel: tuple[int, int], blockers: list[tuple[int, int]]):
        self.pixel = pixel
        self.blockers = blockers
        super().__init__(
            f"seed region at {pixel} is occluded at pixels {blockers}"
        )


class NoRooms(MuseumGenError):
    code = "no_rooms"

    def __init__(self):
        super().__init__("growth requires at least one placed seed")


class NotTerminal(MuseumGenError):
    code = "not_terminal"

    def __init__(self):
        super().__init__("growth has not run to completion")


# --- bspca ------------------------------------------------------------------

class InfeasibleParams(MuseumGenError):
    code = "infeasible_params"

    def __init__(self, reason: str):
        super().__init__(f"infeasible generation parameters: {reason}")


class RestartExhausted(MuseumGenError):
    code = "restart_exhausted"

    def __init__(self, attempts: int):
        self.attempts = attempts
        super().__init__(f"layout generation failed after {attempts} attempts")


# --- roomgen ----------------------------------------------------------------

class TooManyOpenings(MuseumGenError):
    code = "too_many_openings"

    def __init__(self, slots: int):
        self.slots = slots
        super().__init__(f"doors + windows exceed the {slots} available wall slots")


class DegenerateDims(MuseumGenError):
    code = "degenerate_dims"

    def __init__(self, width_m: float, depth_m: float):
        super().__init__(f"room dimensions {width_m}x{depth_m} m must each be >= 2 m")


# --- scene ------------------------------------------------------------------

class CellOccupied(MuseumGenError):
    code = "cell_occupied"

    def __init__(self, level: int, cell: tuple[int, int]):
        self.level = level
        self.cell = cell
        super().__init__(f"cell {cell} on level {level} is already occupied")


class NoAdjacentFloor(MuseumGenError):
    code = "no_adjacent_floor"

    def __init__(self):
        super().__init__("no floor tile within one tile of the requested edge position")


class LevelOutOfRange(MuseumGenError):
    code = "level_out_of_range"

    def __init__(self, level: int, levels: int):
        self.level = level
        super().__init__(f"level {level} outside 0..{levels - 1}")


class UnknownId(MuseumGenError):
    code = "unknown_id"

    def __init__(self, object_id: int):
        self.object_id = object_id
        super().__init__(f"no object with id {object_id}")


class OutOfRange(MuseumGenError):
    code = "out_of_range"

    def __init__(self, value: float, lo: float, hi: float):
        super().__init__(f"value {value} outside [{lo}, {hi}]")


class SchemaVersionMismatch(MuseumGenError):
    code = "schema_version_mismatch"

    def __init__(self, found, expected: int):
        super().__init__(f"layout schema version {found!r}, expected {expected}")


class SchemaViolation(MuseumGenError):
    code = "schema_violation"

    def __init__(self, path: str, detail: str):
        self.path = path
        super().__init__(f"invalid layout document at {path}: {detail}")
