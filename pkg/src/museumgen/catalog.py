"""Archive ingestion: asset classification, metadata parsing, catalog building.

An archive is a set of asset references (paths or URIs, never decoded) plus an
optional metadata document (CSV or JSON). Assets are classified into the five
artifact classes by extension; metadata rows are matched to assets by name and
the result is indexed under the four archival keys (artist, style, location,
time) that drive room generation.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import re
from dataclasses import dataclass, field
from urllib.parse import urlparse

from .errors import (
    BadSizeSyntax,
    DuplicateName,
    EmptyCatalog,
    MalformedDocument,
    UnknownColumn,
    UnsupportedFormat,
)


class ArtifactKind(enum.Enum):
    PAINTING = "painting"
    SCULPTURE = "sculpture"
    VIDEO = "video"
    SOUND = "sound"
    TEXT = "text"


class GroupKey(enum.Enum):
    ARTIST = "artist"
    STYLE = "style"
    LOCATION = "location"
    TIME = "time"


#: Key used in indexes and groups for records whose field is empty or absent.
UNSPECIFIED = "unspecified"

EXTENSION_KINDS: dict[str, ArtifactKind] = {
    ".txt": ArtifactKind.TEXT,
    ".jpeg": ArtifactKind.PAINTING,
    ".jpg": ArtifactKind.PAINTING,
    ".png": ArtifactKind.PAINTING,
    ".obj": ArtifactKind.SCULPTURE,
    ".fbx": ArtifactKind.SCULPTURE,
    ".mp3": ArtifactKind.SOUND,
    ".mp4": ArtifactKind.VIDEO,
}

METADATA_COLUMNS = ("name", "artist", "style", "location", "time", "size", "description")

_SIZE_RE = re.compile(
    r"^(\d+(?:\.\d+)?|\.\d+)x(\d+(?:\.\d+)?|\.\d+)(?:x(\d+(?:\.\d+)?|\.\d+))?$"
)


@dataclass(frozen=True)
class ArtifactSize:
    """Physical extent in meters. Width is the along-wall (X) dimension."""

    width_m: float
    height_m: float
    depth_m: float | None = None

    def __post_init__(self):
        for v in (self.width_m, self.height_m, self.depth_m):
            if v is not None and v <= 0:
                raise ValueError(f"size components must be > 0, got {v}")


@dataclass(frozen=True)
class ArtifactRecord:
    name: str
    kind: ArtifactKind
    asset_ref: str
    artist: str = ""
    style: str = ""
    location: str = ""
    time: int | None = None
    size: ArtifactSize | None = None
    description: str = ""

    def __post_init__(self):
        if not self.name:
            raise ValueError("artifact name must be non-empty")


@dataclass(frozen=True)
class RecordFragment:
    """One parsed metadata row/object, not yet matched to an asset."""

    name: str
    artist: str | None = None
    style: str | None = None
    location: str | None = None
    time: int | None = None
    size: ArtifactSize | None = None
    description: str | None = None


@dataclass(frozen=True)
class ArtifactGroup:
    key_kind: GroupKey
    key_value: str | int
    ordered_records: tuple[ArtifactRecord, ...]


@dataclass(frozen=True)
class Catalog:
    """Immutable record list plus the four archival indexes (record ids are
    positions in ``records``)."""

    records: tuple[ArtifactRecord, ...]
    index_artist: dict[str, tuple[int, ...]]
    index_style: dict[str, tuple[int, ...]]
    index_location: dict[str, tuple[int, ...]]
    index_time: dict[int | str, tuple[int, ...]]
    unmatched_fragments: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.records)


def split_ref(asset_ref: str) -> tuple[str, str]:
    """Return (stem, extension) of a path or URI, extension lowercased."""
    if "://" in asset_ref:
        path = urlparse(asset_ref).path
    else:
        path = asset_ref
    name = path.replace("\\", "/").rsplit("/", 1)[-1]
    dot = name.rfind(".")
    if dot <= 0:
        return name, ""
    return name[:dot], name[dot:].lower()


def classify_asset(asset_ref: str) -> ArtifactKind:
    """Map an asset reference to its artifact class by file extension."""
    _, ext = split_ref(asset_ref)
    kind = EXTENSION_KINDS.get(ext)
    if kind is None:
        raise UnsupportedFormat(ext, tuple(sorted(EXTENSION_KINDS)))
    return kind


def parse_size(value: str) -> ArtifactSize:
    m = _SIZE_RE.match(value)
    if not m:
        raise BadSizeSyntax(value)
    parts = [float(g) for g in m.groups() if g is not None]
    if any(p <= 0 for p in parts):
        raise BadSizeSyntax(value)
    return ArtifactSize(*parts)


def _parse_time(raw: str, position: str) -> int | None:
    raw = raw.strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise MalformedDocument(position, f"time {raw!r} is not an integer year") from None


class MetadataFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"


def parse_metadata(document: str, format: MetadataFormat) -> list[RecordFragment]:
    """Parse a metadata document into record fragments.

    Absent optional fields stay absent (``None``); they are never defaulted
    here. Size values use the ``WxH`` / ``WxHxD`` grammar, meters.
    """
    if format is MetadataFormat.CSV:
        return _parse_csv(document)
    return _parse_json(document)


def _parse_csv(document: str) -> list[RecordFragment]:
    reader = csv.reader(io.StringIO(document))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedDocument("line 1", "empty document") from None
    except csv.Error as exc:
        raise MalformedDocument("line 1", str(exc)) from None
    header = [h.strip() for h in header]
    for name in header:
        if name not in METADATA_COLUMNS:
            raise UnknownColumn(name)
    if sorted(header) != sorted(METADATA_COLUMNS):
        missing = set(METADATA_COLUMNS) - set(header)
        raise MalformedDocument("line 1", f"header must list all columns; missing {sorted(missing)}")

    fragments = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise MalformedDocument(f"line {lineno}", f"expected {len(header)} fields, got {len(row)}")
        cells = dict(zip(header, row))
        fragments.append(_fragment_from_cells(cells, f"line {lineno}"))
    return fragments


def _parse_json(document: str) -> list[RecordFragment]:
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(data, list):
        raise MalformedDocument("document root", "expected an array of objects")
    fragments = []
    for i, obj in enumerate(data):
        position = f"object {i}"
        if not isinstance(obj, dict):
            raise MalformedDocument(position, "expected an object")
        for key in obj:
            if key not in METADATA_COLUMNS:
                raise UnknownColumn(key)
        cells: dict[str, str] = {}
        for key in METADATA_COLUMNS:
            value = obj.get(key)
            if value is None:
                cells[key] = ""
            elif key == "time":
                if isinstance(value, bool) or not isinstance(value, int):
                    raise MalformedDocument(position, f"time must be an integer, got {value!r}")
                cells[key] = str(value)
            elif isinstance(value, str):
                cells[key] = value
            else:
                raise MalformedDocument(position, f"{key} must be a string, got {value!r}")
        fragments.append(_fragment_from_cells(cells, position))
    return fragments


def _fragment_from_cells(cells: dict[str, str], position: str) -> RecordFragment:
    size_raw = cells.get("size", "").strip()
    return RecordFragment(
        name=cells.get("name", "").strip(),
        artist=cells.get("artist", "").strip() or None,
        style=cells.get("style", "").strip() or None,
        location=cells.get("location", "").strip() or None,
        time=_parse_time(cells.get("time", ""), position),
        size=parse_size(size_raw) if size_raw else None,
        description=cells.get("description", "").strip() or None,
    )


def build_catalog(fragments: list[RecordFragment], asset_refs: list[str]) -> Catalog:
    """Match fragments to assets by exact filename stem and build all indexes.

    Assets without a matching fragment become metadata-less records named by
    their stem; fragments without a matching asset are recorded as unmatched
    and excluded.
    """
    by_stem: dict[str, str] = {}
    kinds: dict[str, ArtifactKind] = {}
    for ref in asset_refs:
        kind = classify_asset(ref)
        stem, _ = split_ref(ref)
        if stem in by_stem:
            raise DuplicateName(stem)
        by_stem[stem] = ref
        kinds[stem] = kind

    frag_by_name: dict[str, RecordFragment] = {}
    for frag in fragments:
        if frag.name in frag_by_name:
            raise DuplicateName(frag.name)
        frag_by_name[frag.name] = frag

    records = []
    for ref in asset_refs:
        stem, _ = split_ref(ref)
        frag = frag_by_name.get(stem)
        if frag is None:
            records.append(ArtifactRecord(name=stem, kind=kinds[stem], asset_ref=ref))
        else:
            records.append(
                ArtifactRecord(
                    name=stem,
                    kind=kinds[stem],
                    asset_ref=ref,
                    artist=frag.artist or "",
                    style=frag.style or "",
                    location=frag.location or "",
                    time=frag.time,
                    size=frag.size,
                    description=frag.description or "",
                )
            )
    unmatched = tuple(name for name in frag_by_name if name not in by_stem)

    records_t = tuple(records)
    return Catalog(
        records=records_t,
        index_artist=build_index(records_t, GroupKey.ARTIST),
        index_style=build_index(records_t, GroupKey.STYLE),
        index_location=build_index(records_t, GroupKey.LOCATION),
        index_time=build_index(records_t, GroupKey.TIME),
        unmatched_fragments=unmatched,
    )


def record_key(record: ArtifactRecord, key: GroupKey) -> str | int:
    """The index key a record files under, with empty/absent mapped to
    :data:`UNSPECIFIED`."""
    if key is GroupKey.TIME:
        return record.time if record.time is not None else UNSPECIFIED
    value = getattr(record, key.value)
    return value if value else UNSPECIFIED


def build_index(records: tuple[ArtifactRecord, ...], key: GroupKey) -> dict:
    index: dict = {}
    for i, record in enumerate(records):
        index.setdefault(record_key(record, key), []).append(i)
    return {k: tuple(ids) for k, ids in index.items()}


def display_order(record: ArtifactRecord) -> tuple:
    """Total order within a group: dated ascending, then undated by name."""
    return (record.time is None, record.time if record.time is not None else 0, record.name)


def group_by(catalog: Catalog, key: GroupKey) -> list[ArtifactGroup]:
    """Partition the catalog into one group per distinct key value.

    Groups are ordered by key (unspecified last); records within a group are
    ordered dated-ascending then undated-alphabetical.
    """
    if not catalog.records:
        raise EmptyCatalog()
    index = {
        GroupKey.ARTIST: catalog.index_artist,
        GroupKey.STYLE: catalog.index_style,
        GroupKey.LOCATION: catalog.index_location,
        GroupKey.TIME: catalog.index_time,
    }[key]

    def key_order(value):
        # unspecified sorts last; otherwise keys are homogeneous per index
        return (1, "") if value == UNSPECIFIED else (0, value)

    groups = []
    for value in sorted(index, key=key_order):
        members = [catalog.records[i] for i in index[value]]
        members.sort(key=display_order)
        groups.append(ArtifactGroup(key_kind=key, key_value=value, ordered_records=tuple(members)))
    return groups
