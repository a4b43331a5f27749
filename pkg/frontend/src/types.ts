/** Layout document types mirroring docs/layout_schema.md (version 1). */

export type ObjectKindName =
  | "floor"
  | "roof"
  | "wall"
  | "corner_wall"
  | "door"
  | "window"
  | "stairs"
  | "landscape"
  | "furniture"
  | "artifact_holder";

export type Side = "n" | "e" | "s" | "w";

export interface CellPose {
  type: "cell";
  level: number;
  cell: [number, number];
}

export interface EdgePose {
  type: "edge";
  level: number;
  cell: [number, number];
  side: Side;
  span: number;
}

export interface FreePose {
  type: "free";
  position: [number, number, number];
  rotation_deg: number;
  scale: [number, number, number];
}

export type Pose = CellPose | EdgePose | FreePose;

export interface SceneObject {
  id: number;
  kind: ObjectKindName;
  material: string;
  pose: Pose;
  artifact?: { kind: string; record: string };
}

export interface Lighting {
  sun_on: boolean;
  ceiling_on: boolean;
  spot_on: boolean;
  temperature_k: number;
}

export interface SceneDoc {
  grid_levels: number;
  grid_height_m: number;
  tile_size: number;
  scale_mode: "human" | "model";
  lighting: Lighting;
  objects: SceneObject[];
}

export interface CellsDoc {
  width: number;
  depth: number;
  rows: string[][];
}

export interface LayoutDoc {
  schema_version: number;
  generator: string;
  params: Record<string, unknown>;
  scene: SceneDoc;
  cells?: CellsDoc;
}

export interface GrowthSnapshot {
  footprint: string;
  paused: boolean;
  terminal: boolean;
  rooms: { rect: [number, number, number, number]; walls: Record<Side, boolean> }[];
  occupancy: number[][];
}

export interface GrowthJobResponse {
  job: "growth";
  params: Record<string, unknown>;
  snapshot: GrowthSnapshot;
  layout_ready?: boolean;
}

export interface FootprintMask {
  id: string;
  width: number;
  height: number;
  rows: number[][];
}
