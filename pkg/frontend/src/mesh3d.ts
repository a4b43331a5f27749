/** Read-only WebGL preview of a layout document.
 *
 * Boxes follow the same realization rules as the server's OBJ export (slab
 * and plane thickness 0.1 m, walls spanning the grid height), so the mesh
 * view is a faithful picture of the document without recomputing anything.
 */

import * as THREE from "three";

import type { LayoutDoc, SceneObject } from "./types.js";

const SLAB = 0.1;

const KIND_COLORS: Record<string, number> = {
  floor: 0xc8c4bc,
  roof: 0xebebe8,
  wall: 0xf5f2eb,
  corner_wall: 0xe4e0d8,
  door: 0x825e3e,
  window: 0x9ec6de,
  stairs: 0xb4b0a8,
  landscape: 0x78a46e,
  furniture: 0x96785f,
  artifact_holder: 0x5a5a60,
};

interface Box {
  min: [number, number, number];
  max: [number, number, number];
}

export function objectBox(obj: SceneObject, doc: LayoutDoc): Box | null {
  const ts = doc.scene.tile_size;
  const height = doc.scene.grid_height_m;
  const pose = obj.pose;
  if (pose.type === "cell") {
    const [x, y] = pose.cell;
    const base = pose.level * height;
    const [y0, y1] =
      obj.kind === "floor" ? [base, base + SLAB] : [base + height - SLAB, base + height];
    return { min: [x * ts, y0, y * ts], max: [(x + 1) * ts, y1, (y + 1) * ts] };
  }
  if (pose.type === "edge") {
    const [x, y] = pose.cell;
    const base = pose.level * height;
    const top = base + height;
    const half = SLAB / 2;
    if (obj.kind === "corner_wall") {
      const corner: Record<string, [number, number]> = {
        n: [x * ts, y * ts],
        e: [(x + 1) * ts, y * ts],
        s: [(x + 1) * ts, (y + 1) * ts],
        w: [x * ts, (y + 1) * ts],
      };
      const [cx, cz] = corner[pose.side];
      return { min: [cx - half, base, cz - half], max: [cx + half, top, cz + half] };
    }
    const length = pose.span * ts;
    switch (pose.side) {
      case "n":
        return { min: [x * ts, base, y * ts - half], max: [x * ts + length, top, y * ts + half] };
      case "s":
        return {
          min: [x * ts, base, (y + 1) * ts - half],
          max: [x * ts + length, top, (y + 1) * ts + half],
        };
      case "e":
        return {
          min: [(x + 1) * ts - half, base, y * ts],
          max: [(x + 1) * ts + half, top, y * ts + length],
        };
      case "w":
        return { min: [x * ts - half, base, y * ts], max: [x * ts + half, top, y * ts + length] };
    }
  }
  const [px, py, pz] = pose.position;
  const [sx, sy, sz] = pose.scale;
  return { min: [px - sx / 2, py, pz - sz / 2], max: [px + sx / 2, py + sy, pz + sz / 2] };
}

export class MeshView {
  private renderer: THREE.WebGLRenderer;
  private scene = new THREE.Scene();
  private camera: THREE.PerspectiveCamera;
  private group = new THREE.Group();
  private center = new THREE.Vector3();
  private radius = 20;
  private theta = Math.PI / 4;
  private phi = Math.PI / 3.2;
  private dragging = false;
  private lastX = 0;
  private lastY = 0;

  constructor(canvas: HTMLCanvasElement) {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.renderer.setSize(canvas.clientWidth, canvas.clientHeight, false);
    this.camera = new THREE.PerspectiveCamera(
      50, canvas.clientWidth / canvas.clientHeight, 0.1, 2000,
    );
    this.scene.background = new THREE.Color(0x14161c);
    this.scene.add(this.group);
    this.scene.add(new THREE.AmbientLight(0xffffff, 0.6));
    const sun = new THREE.DirectionalLight(0xffffff, 1.2);
    sun.position.set(1, 2, 1.4);
    this.scene.add(sun);

    canvas.addEventListener("pointerdown", (e) => {
      this.dragging = true;
      this.lastX = e.clientX;
      this.lastY = e.clientY;
    });
    window.addEventListener("pointerup", () => (this.dragging = false));
    window.addEventListener("pointermove", (e) => {
      if (!this.dragging) return;
      this.theta -= (e.clientX - this.lastX) * 0.008;
      this.phi = Math.min(Math.max(this.phi - (e.clientY - this.lastY) * 0.008, 0.15), 1.5);
      this.lastX = e.clientX;
      this.lastY = e.clientY;
      this.render();
    });
    canvas.addEventListener("wheel", (e) => {
      e.preventDefault();
      this.radius = Math.min(Math.max(this.radius * (1 + e.deltaY * 0.001), 2), 600);
      this.render();
    });
  }

  /** Replace the displayed document; `tint` is the server-reported light
   * color and `scaleOverride` the display-only scale-mode toggle. */
  show(
    doc: LayoutDoc,
    tint?: [number, number, number],
    scaleOverride?: "human" | "model",
  ): void {
    this.group.clear();
    const tintColor = tint
      ? new THREE.Color(tint[0] / 255, tint[1] / 255, tint[2] / 255)
      : new THREE.Color(1, 1, 1);
    const bounds = new THREE.Box3();
    const mode = scaleOverride ?? doc.scene.scale_mode;
    const scale = mode === "model" ? 1 / 20 : 1;
    for (const obj of doc.scene.objects) {
      const box = objectBox(obj, doc);
      if (!box) continue;
      const size = box.max.map((v, i) => (v - box.min[i]) * scale) as [number, number, number];
      const geometry = new THREE.BoxGeometry(...size);
      const color = new THREE.Color(KIND_COLORS[obj.kind] ?? 0xff00ff).multiply(tintColor);
      const material = new THREE.MeshLambertMaterial({
        color,
        transparent: obj.kind === "window",
        opacity: obj.kind === "window" ? 0.55 : 1.0,
      });
      const mesh = new THREE.Mesh(geometry, material);
      mesh.position.set(
        ((box.min[0] + box.max[0]) / 2) * scale,
        ((box.min[1] + box.max[1]) / 2) * scale,
        ((box.min[2] + box.max[2]) / 2) * scale,
      );
      this.group.add(mesh);
      bounds.expandByObject(mesh);
    }
    if (!bounds.isEmpty()) {
      bounds.getCenter(this.center);
      this.radius = bounds.getSize(new THREE.Vector3()).length() * 0.9 + 2;
    }
    this.render();
  }

  render(): void {
    this.camera.position.set(
      this.center.x + this.radius * Math.sin(this.phi) * Math.cos(this.theta),
      this.center.y + this.radius * Math.cos(this.phi),
      this.center.z + this.radius * Math.sin(this.phi) * Math.sin(this.theta),
    );
    this.camera.lookAt(this.center);
    this.renderer.render(this.scene, this.camera);
  }
}
