"""Figure rendering for CLI reports: plan summaries and layout previews.

Figures are written next to the delimited/JSON outputs. Rendering is
presentation only; nothing here feeds back into generation.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.collections import LineCollection, PatchCollection
from matplotlib.patches import Rectangle

from .scene import CellPose, Compass, EdgePose, FreePose, ObjectKind, TileScene
from .sizing import RoomSpec

_SAVE_META = {"Software": "museumgen"}

_EDGE_COLORS = {
    ObjectKind.WALL: "#2b2b2b",
    ObjectKind.DOOR: "#8a5a2b",
    ObjectKind.WINDOW: "#4d8fc4",
}


def plan_figure(specs: list[RoomSpec]) -> plt.Figure:
    """Bar chart of room envelopes per group with artifact counts."""
    labels = [str(s.group.key_value) for s in specs]
    sides = [s.width_m for s in specs]
    counts = [len(s.group.ordered_records) for s in specs]

    fig, ax = plt.subplots(figsize=(max(4.0, 1.1 * len(specs) + 2), 3.6))
    bars = ax.bar(range(len(specs)), sides, color="#4d8fc4", width=0.6)
    for bar, side, count in zip(bars, sides, counts):
        ax.annotate(
            f"{side:.2f} m\n{count} items",
            (bar.get_x() + bar.get_width() / 2, bar.get_height()),
            ha="center", va="bottom", fontsize=8,
        )
    ax.set_xticks(range(len(specs)))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("room side (m)")
    ax.set_title(f"{len(specs)} rooms by {specs[0].group.key_kind.value}" if specs else "no rooms")
    ax.margins(y=0.25)
    fig.tight_layout()
    return fig


def _edge_segment(pose: EdgePose, ts: float):
    x, y = pose.cell
    length = pose.span
    if pose.side is Compass.N:
        return (x * ts, y * ts), ((x + length) * ts, y * ts)
    if pose.side is Compass.S:
        return (x * ts, (y + 1) * ts), ((x + length) * ts, (y + 1) * ts)
    if pose.side is Compass.E:
        return ((x + 1) * ts, y * ts), ((x + 1) * ts, (y + length) * ts)
    return (x * ts, y * ts), (x * ts, (y + length) * ts)


def layout_figure(scene: TileScene, title: str = "") -> plt.Figure:
    """Top-down plan: floors as tiles, walls/doors/windows as edge strokes.

    Drawn with collections; per-object artists are far too slow for the
    thousands of tiles a growth run produces.
    """
    fig, ax = plt.subplots(figsize=(6, 6))
    ts = float(scene.tile_size)
    floors = []
    segments = {kind: [] for kind in _EDGE_COLORS}
    corners = []
    free_points = []
    for obj in scene.objects():
        if obj.kind is ObjectKind.FLOOR and isinstance(obj.pose, CellPose):
            if obj.pose.level == 0:
                floors.append(obj.pose.cell)
        elif isinstance(obj.pose, EdgePose) and obj.pose.level == 0:
            if obj.kind is ObjectKind.CORNER_WALL:
                dx, dy = {
                    Compass.N: (0.0, 0.0), Compass.E: (1.0, 0.0),
                    Compass.S: (1.0, 1.0), Compass.W: (0.0, 1.0),
                }[obj.pose.side]
                corners.append(((obj.pose.cell[0] + dx) * ts, (obj.pose.cell[1] + dy) * ts))
            elif obj.kind in segments:
                segments[obj.kind].append(_edge_segment(obj.pose, ts))
        elif isinstance(obj.pose, FreePose):
            px, _, pz = obj.pose.position
            free_points.append((px, pz))

    if floors:
        ax.add_collection(PatchCollection(
            [Rectangle((x * ts, y * ts), ts, ts) for x, y in floors],
            facecolor="#d9d4ca", edgecolor="none",
        ))
    for kind, segs in segments.items():
        if segs:
            ax.add_collection(LineCollection(
                segs, colors=_EDGE_COLORS[kind],
                linewidths=3 if kind is ObjectKind.WALL else 4,
                capstyle="butt",
            ))
    if corners:
        ax.scatter(*zip(*corners), marker="s", s=9, color="#2b2b2b")
    if free_points:
        ax.scatter(*zip(*free_points), marker="o", s=9, color="#777777")

    ax.set_aspect("equal")
    ax.autoscale_view()
    ax.invert_yaxis()  # raster convention: y grows downward
    ax.set_title(title, fontsize=10)
    ax.set_xlabel("x (m)")
    ax.set_ylabel("z (m)")
    fig.tight_layout()
    return fig


def save_figure(fig: plt.Figure, path) -> None:
    fig.savefig(path, dpi=120, metadata=_SAVE_META)
    plt.close(fig)
