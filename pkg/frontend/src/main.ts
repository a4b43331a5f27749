/** Curator console wiring: footprint picking, seed clicks, generator forms,
 * stepped growth animation, 2D/3D previews, lighting controls. */

import { ApiClient, isApiError } from "./api.js";
import { sha256Hex } from "./hash.js";
import { MeshView } from "./mesh3d.js";
import { deriveCellGrid, drawGrid, drawMask, drawOccupancy } from "./plan2d.js";
import {
  addSeed,
  canvasToPixel,
  clearSeeds,
  echoedSeeds,
  initialState,
  setFootprint,
  setLayout,
} from "./state.js";
import type { LayoutDoc } from "./types.js";

const api = new ApiClient("");
const state = initialState();

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const footprintSelect = $<HTMLSelectElement>("footprint-select");
const footprintCanvas = $<HTMLCanvasElement>("footprint-canvas");
const planCanvas = $<HTMLCanvasElement>("plan-canvas");
const meshCanvas = $<HTMLCanvasElement>("mesh-canvas");
const statusLine = $<HTMLElement>("status");
const seedList = $<HTMLElement>("seed-list");
const paramsEcho = $<HTMLElement>("params-echo");
const devHash = $<HTMLElement>("dev-hash");

const meshView = new MeshView(meshCanvas);
let lightTint: [number, number, number] | undefined;
let displayScale: "human" | "model" = "human";
let stepTimer: number | null = null;

function status(text: string, isError = false): void {
  statusLine.textContent = text;
  statusLine.className = isError ? "error" : "";
}

function describeError(err: unknown): string {
  if (isApiError(err)) return `${err.code}: ${err.message}`;
  return String(err);
}

function redrawFootprint(): void {
  const ctx = footprintCanvas.getContext("2d")!;
  if (state.mask) drawMask(ctx, state.mask.rows, state.pendingSeeds, footprintCanvas.width);
  seedList.textContent = state.pendingSeeds.map(([x, y]) => `(${x}, ${y})`).join("  ");
}

async function showLayout(doc: LayoutDoc, bytes: Uint8Array): Promise<void> {
  const hash = await sha256Hex(bytes);
  setLayout(state, doc, bytes, hash);
  const grid = doc.cells ?? deriveCellGrid(doc);
  drawGrid(planCanvas.getContext("2d")!, grid, planCanvas.width);
  meshView.show(doc, lightTint, displayScale);
  paramsEcho.textContent = JSON.stringify(doc.params, null, 2);

  // dev-mode invariant: the displayed layout is exactly the server document
  if (state.sessionId) {
    const fresh = await api.getScene(state.sessionId);
    const serverHash = await sha256Hex(fresh.bytes);
    devHash.textContent = hash === serverHash
      ? `layout hash ${hash.slice(0, 12)}… matches server`
      : `HASH MISMATCH: ui ${hash.slice(0, 12)} vs server ${serverHash.slice(0, 12)}`;
  }
  const seeds = echoedSeeds(doc);
  if (seeds.length) {
    status(`layout ready; server used seeds ${seeds.map(([x, y]) => `(${x},${y})`).join(" ")}`);
  } else {
    status("layout ready");
  }
}

async function init(): Promise<void> {
  state.sessionId = await api.createSession();
  const { footprints } = await api.listFootprints();
  for (const id of footprints) {
    const option = document.createElement("option");
    option.value = id;
    option.textContent = id;
    footprintSelect.appendChild(option);
  }
  await pickFootprint(footprints[0]);
  status(`session ${state.sessionId.slice(0, 8)}… ready`);
}

async function pickFootprint(id: string): Promise<void> {
  const mask = await api.footprintMask(id);
  setFootprint(state, id, mask);
  footprintSelect.value = id;
  redrawFootprint();
}

footprintSelect.addEventListener("change", () => {
  pickFootprint(footprintSelect.value).catch((e) => status(describeError(e), true));
});

footprintCanvas.addEventListener("click", (event) => {
  const rect = footprintCanvas.getBoundingClientRect();
  const pixel = canvasToPixel(
    event.clientX - rect.left, event.clientY - rect.top, rect.width, rect.height,
  );
  const result = addSeed(state, pixel);
  if (!result.accepted) {
    status(result.reason ?? "rejected", true);
  } else {
    status(`seed at (${pixel[0]}, ${pixel[1]})`);
  }
  redrawFootprint();
});

$<HTMLButtonElement>("clear-seeds").addEventListener("click", () => {
  clearSeeds(state);
  redrawFootprint();
});

function stopStepping(): void {
  if (stepTimer !== null) {
    window.clearInterval(stepTimer);
    stepTimer = null;
  }
  state.stepping = false;
}

$<HTMLButtonElement>("run-growth").addEventListener("click", async () => {
  if (!state.sessionId || !state.footprintId) return;
  if (!state.pendingSeeds.length) {
    status("click at least one seed pixel first", true);
    return;
  }
  const body = {
    footprint: state.footprintId,
    seeds: { mode: "explicit", pixels: state.pendingSeeds },
  };
  const stepped = $<HTMLInputElement>("step-mode").checked;
  try {
    if (!stepped) {
      const layout = await api.generateGrowth(state.sessionId, body);
      await showLayout(layout.doc, layout.bytes);
      return;
    }
    await api.startGrowthJob(state.sessionId, body);
    state.stepping = true;
    state.paused = false;
    status("growing…");
    stepTimer = window.setInterval(async () => {
      if (!state.sessionId || state.paused) return;
      const job = await api.growthStep(state.sessionId, 1);
      drawOccupancy(planCanvas.getContext("2d")!, job.snapshot, planCanvas.width);
      if (job.snapshot.terminal) {
        stopStepping();
        const layout = await api.getScene(state.sessionId);
        await showLayout(layout.doc, layout.bytes);
      }
    }, 90);
  } catch (err) {
    stopStepping();
    status(describeError(err), true);
  }
});

$<HTMLButtonElement>("pause-growth").addEventListener("click", async () => {
  if (!state.sessionId || !state.stepping) return;
  await api.growthPause(state.sessionId);
  state.paused = true;
  status("paused");
});

$<HTMLButtonElement>("resume-growth").addEventListener("click", async () => {
  if (!state.sessionId || !state.stepping) return;
  await api.growthResume(state.sessionId);
  state.paused = false;
  status("growing…");
});

$<HTMLButtonElement>("run-bsp").addEventListener("click", async () => {
  if (!state.sessionId) return;
  stopStepping();
  const params = {
    seed: Number($<HTMLInputElement>("bsp-seed").value),
    rooms: Number($<HTMLInputElement>("bsp-rooms").value),
    footprint: [
      Number($<HTMLInputElement>("bsp-width").value),
      Number($<HTMLInputElement>("bsp-depth").value),
    ],
    room_min: Number($<HTMLInputElement>("bsp-room-min").value),
    room_max: Number($<HTMLInputElement>("bsp-room-max").value),
  };
  try {
    const layout = await api.generateBsp(state.sessionId, params);
    await showLayout(layout.doc, layout.bytes);
  } catch (err) {
    status(describeError(err), true);
  }
});

$<HTMLButtonElement>("run-room").addEventListener("click", async () => {
  if (!state.sessionId) return;
  stopStepping();
  const params = {
    width_m: Number($<HTMLInputElement>("room-width").value),
    depth_m: Number($<HTMLInputElement>("room-depth").value),
    windows: Number($<HTMLInputElement>("room-windows").value),
    doors: Number($<HTMLInputElement>("room-doors").value),
  };
  try {
    const layout = await api.generateRoom(state.sessionId, params);
    await showLayout(layout.doc, layout.bytes);
  } catch (err) {
    status(describeError(err), true);
  }
});

const temperatureInput = $<HTMLInputElement>("light-temperature");
temperatureInput.addEventListener("change", async () => {
  if (!state.sessionId) return;
  try {
    const result = await api.patchLighting(state.sessionId, {
      temperature_k: Number(temperatureInput.value),
    });
    lightTint = result.color;
    $<HTMLElement>("light-swatch").style.background =
      `rgb(${result.color[0]}, ${result.color[1]}, ${result.color[2]})`;
    if (state.layoutDoc) meshView.show(state.layoutDoc, lightTint, displayScale);
  } catch (err) {
    status(describeError(err), true);
  }
});

for (const toggle of ["sun_on", "ceiling_on", "spot_on"]) {
  $<HTMLInputElement>(`light-${toggle}`).addEventListener("change", async (event) => {
    if (!state.sessionId) return;
    await api.patchLighting(state.sessionId, {
      [toggle]: (event.target as HTMLInputElement).checked,
    });
  });
}

$<HTMLSelectElement>("scale-display").addEventListener("change", (event) => {
  displayScale = (event.target as HTMLSelectElement).value as "human" | "model";
  if (state.layoutDoc) meshView.show(state.layoutDoc, lightTint, displayScale);
});

for (const mode of ["plan2d", "mesh3d"] as const) {
  $<HTMLButtonElement>(`view-${mode}`).addEventListener("click", () => {
    state.viewMode = mode;
    planCanvas.style.display = mode === "plan2d" ? "block" : "none";
    meshCanvas.style.display = mode === "mesh3d" ? "block" : "none";
    if (mode === "mesh3d") meshView.render();
  });
}

$<HTMLAnchorElement>("download-obj").addEventListener("click", (event) => {
  if (!state.sessionId) {
    event.preventDefault();
    return;
  }
  $<HTMLAnchorElement>("download-obj").href = api.exportObjUrl(state.sessionId);
});

init().catch((err) => status(describeError(err), true));
