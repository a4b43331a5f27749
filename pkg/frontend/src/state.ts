/** Console state and the pure transition helpers the tests exercise.
 *
 * Seed clicks are validated against the footprint mask client side (interior
 * or rejected inline); everything deeper (clean 3x3 regions, growth itself)
 * is the server's call and is only surfaced here.
 */

import type { FootprintMask, LayoutDoc } from "./types.js";

export type ViewMode = "plan2d" | "mesh3d";

export interface UiState {
  sessionId: string | null;
  footprintId: string | null;
  mask: FootprintMask | null;
  pendingSeeds: [number, number][];
  lastRejection: string | null;
  layoutDoc: LayoutDoc | null;
  layoutBytes: Uint8Array | null;
  layoutHash: string | null;
  viewMode: ViewMode;
  stepping: boolean;
  paused: boolean;
}

export function initialState(): UiState {
  return {
    sessionId: null,
    footprintId: null,
    mask: null,
    pendingSeeds: [],
    lastRejection: null,
    layoutDoc: null,
    layoutBytes: null,
    layoutHash: null,
    viewMode: "plan2d",
    stepping: false,
    paused: false,
  };
}

/** Canvas coordinates to footprint pixel coordinates (128x128 grid). */
export function canvasToPixel(
  canvasX: number,
  canvasY: number,
  canvasWidth: number,
  canvasHeight: number,
  gridSize = 128,
): [number, number] {
  const x = Math.floor((canvasX / canvasWidth) * gridSize);
  const y = Math.floor((canvasY / canvasHeight) * gridSize);
  const clamp = (v: number) => Math.min(Math.max(v, 0), gridSize - 1);
  return [clamp(x), clamp(y)];
}

export function isInterior(mask: FootprintMask, pixel: [number, number]): boolean {
  const [x, y] = pixel;
  if (x < 0 || y < 0 || x >= mask.width || y >= mask.height) return false;
  return mask.rows[y][x] === 1;
}

export interface SeedResult {
  accepted: boolean;
  reason?: string;
}

/** Append a seed if the click lands on the interior; reject inline if not. */
export function addSeed(state: UiState, pixel: [number, number]): SeedResult {
  if (!state.mask) {
    state.lastRejection = "no footprint loaded";
    return { accepted: false, reason: state.lastRejection };
  }
  if (!isInterior(state.mask, pixel)) {
    state.lastRejection = `pixel (${pixel[0]}, ${pixel[1]}) is outside the footprint`;
    return { accepted: false, reason: state.lastRejection };
  }
  state.pendingSeeds.push(pixel);
  state.lastRejection = null;
  return { accepted: true };
}

export function clearSeeds(state: UiState): void {
  state.pendingSeeds = [];
  state.lastRejection = null;
}

export function setFootprint(state: UiState, id: string, mask: FootprintMask): void {
  state.footprintId = id;
  state.mask = mask;
  clearSeeds(state);
}

export function setLayout(
  state: UiState,
  doc: LayoutDoc,
  bytes: Uint8Array,
  hash: string,
): void {
  state.layoutDoc = doc;
  state.layoutBytes = bytes;
  state.layoutHash = hash;
  state.stepping = false;
  state.paused = false;
}

/** Seed pixels echoed by the server for the current layout (round-trip check). */
export function echoedSeeds(doc: LayoutDoc): [number, number][] {
  const raw = doc.params["seed_pixels"];
  if (!Array.isArray(raw)) return [];
  return raw.map((p) => [Number((p as number[])[0]), Number((p as number[])[1])]);
}
