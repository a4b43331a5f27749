/** 2D plan derivation and canvas rendering.
 *
 * `deriveCellGrid` rebuilds per-cell states purely from the scene objects,
 * which doubles as an independent check against the server's `cells` grid
 * on BSP documents (they must agree cell for cell).
 */

import type { GrowthSnapshot, LayoutDoc, SceneObject } from "./types.js";

export const CELL_COLORS: Record<string, string> = {
  empty: "#14161c",
  floor: "#d9d4ca",
  wall: "#2b2b2b",
  corner: "#1a1a1a",
  door: "#8a5a2b",
  window: "#4d8fc4",
};

const EDGE_STATE: Record<string, string> = {
  wall: "wall",
  corner_wall: "corner",
  door: "door",
  window: "window",
};

function coveredCells(obj: SceneObject): [number, number][] {
  if (obj.pose.type !== "edge") return [];
  const [x, y] = obj.pose.cell;
  const out: [number, number][] = [];
  for (let i = 0; i < obj.pose.span; i++) {
    out.push(obj.pose.side === "n" || obj.pose.side === "s" ? [x + i, y] : [x, y + i]);
  }
  return out;
}

export interface DerivedGrid {
  width: number;
  depth: number;
  /** row-major tokens in the same format as the document cells grid */
  rows: string[][];
}

/** Rebuild the cell-state grid of level 0 from the scene objects alone. */
export function deriveCellGrid(doc: LayoutDoc, width?: number, depth?: number): DerivedGrid {
  let maxX = 0;
  let maxY = 0;
  const marks: [number, number, string][] = [];
  for (const obj of doc.scene.objects) {
    if (obj.pose.type === "cell") {
      if (obj.pose.level !== 0 || obj.kind !== "floor") continue;
      const [x, y] = obj.pose.cell;
      marks.push([x, y, "floor"]);
      maxX = Math.max(maxX, x);
      maxY = Math.max(maxY, y);
    } else if (obj.pose.type === "edge") {
      if (obj.pose.level !== 0) continue;
      const state = EDGE_STATE[obj.kind];
      if (!state) continue;
      const token = `${state}:${obj.pose.side}`;
      for (const [x, y] of coveredCells(obj)) {
        marks.push([x, y, token]);
        maxX = Math.max(maxX, x);
        maxY = Math.max(maxY, y);
      }
    }
  }
  const w = width ?? maxX + 1;
  const d = depth ?? maxY + 1;
  const rows: string[][] = Array.from({ length: d }, () => Array(w).fill("empty"));
  for (const [x, y, token] of marks) {
    if (x >= 0 && y >= 0 && x < w && y < d) rows[y][x] = token;
  }
  return { width: w, depth: d, rows };
}

export function tokenState(token: string): string {
  return token.split(":", 1)[0];
}

export function drawGrid(
  ctx: CanvasRenderingContext2D,
  grid: DerivedGrid,
  canvasSize: number,
): void {
  const cell = canvasSize / Math.max(grid.width, grid.depth);
  ctx.fillStyle = CELL_COLORS.empty;
  ctx.fillRect(0, 0, canvasSize, canvasSize);
  for (let y = 0; y < grid.depth; y++) {
    for (let x = 0; x < grid.width; x++) {
      const state = tokenState(grid.rows[y][x]);
      if (state === "empty") continue;
      ctx.fillStyle = CELL_COLORS[state] ?? "#ff00ff";
      ctx.fillRect(x * cell, y * cell, Math.ceil(cell), Math.ceil(cell));
    }
  }
}

const OCCUPANCY_ROOM_COLORS = [
  "#7fb069", "#6a8ec9", "#c97f6a", "#b569b0", "#c9b36a", "#69c9b8",
];

/** Paint a growth occupancy snapshot (exterior/free/walls/voids). */
export function drawOccupancy(
  ctx: CanvasRenderingContext2D,
  snapshot: GrowthSnapshot,
  canvasSize: number,
): void {
  const rows = snapshot.occupancy;
  const cell = canvasSize / rows.length;
  ctx.fillStyle = "#14161c";
  ctx.fillRect(0, 0, canvasSize, canvasSize);
  for (let y = 0; y < rows.length; y++) {
    for (let x = 0; x < rows[y].length; x++) {
      const value = rows[y][x];
      if (value === -2) continue; // exterior
      if (value === -1) {
        ctx.fillStyle = "#3a3d46"; // free interior
      } else {
        const room = Math.floor(value / 2);
        const base = OCCUPANCY_ROOM_COLORS[room % OCCUPANCY_ROOM_COLORS.length];
        ctx.fillStyle = value % 2 === 1 ? base : "#23252c"; // void vs wall ring
      }
      ctx.fillRect(x * cell, y * cell, Math.ceil(cell), Math.ceil(cell));
    }
  }
}

export function drawMask(
  ctx: CanvasRenderingContext2D,
  rows: number[][],
  seeds: [number, number][],
  canvasSize: number,
): void {
  const cell = canvasSize / rows.length;
  ctx.fillStyle = "#14161c";
  ctx.fillRect(0, 0, canvasSize, canvasSize);
  ctx.fillStyle = "#e8e4da";
  for (let y = 0; y < rows.length; y++) {
    for (let x = 0; x < rows[y].length; x++) {
      if (rows[y][x]) ctx.fillRect(x * cell, y * cell, Math.ceil(cell), Math.ceil(cell));
    }
  }
  ctx.fillStyle = "#d23f31";
  for (const [x, y] of seeds) {
    ctx.beginPath();
    ctx.arc((x + 0.5) * cell, (y + 0.5) * cell, Math.max(2.5, cell), 0, Math.PI * 2);
    ctx.fill();
  }
}
