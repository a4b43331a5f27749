/** Thin client for the museumgen HTTP service.
 *
 * Layout responses are kept as raw bytes next to the parsed document, so the
 * console can always hash exactly what the server sent and compare it with
 * a fresh `GET /scene` ETag. The console never computes layouts itself.
 */

import type {
  FootprintMask,
  GrowthJobResponse,
  LayoutDoc,
} from "./types.js";

export interface LayoutResponse {
  doc: LayoutDoc;
  bytes: Uint8Array;
  etag: string | null;
}

export interface ApiError {
  status: number;
  code: string;
  message: string;
}

export function isApiError(value: unknown): value is ApiError {
  return typeof value === "object" && value !== null && "code" in value && "status" in value;
}

async function fail(response: Response): Promise<never> {
  let code = "http_error";
  let message = response.statusText;
  try {
    const body = await response.json();
    code = body.code ?? code;
    message = body.message ?? message;
  } catch {
    /* non-JSON error body */
  }
  throw { status: response.status, code, message } satisfies ApiError;
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) await fail(response);
    return (await response.json()) as T;
  }

  private async layout(path: string, init?: RequestInit): Promise<LayoutResponse> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) await fail(response);
    const bytes = new Uint8Array(await response.arrayBuffer());
    const doc = JSON.parse(new TextDecoder().decode(bytes)) as LayoutDoc;
    return { doc, bytes, etag: response.headers.get("ETag") };
  }

  private post(body: unknown): RequestInit {
    return {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    };
  }

  async createSession(): Promise<string> {
    const body = await this.json<{ id: string }>("/sessions", this.post({}));
    return body.id;
  }

  listFootprints(): Promise<{ footprints: string[] }> {
    return this.json("/footprints");
  }

  footprintMask(id: string): Promise<FootprintMask> {
    return this.json(`/footprints/${id}/mask`);
  }

  footprintPngUrl(id: string): string {
    return `${this.base}/footprints/${id}`;
  }

  generateBsp(sessionId: string, params: Record<string, unknown>): Promise<LayoutResponse> {
    return this.layout(`/sessions/${sessionId}/generate/bsp`, this.post(params));
  }

  generateRoom(sessionId: string, params: Record<string, unknown>): Promise<LayoutResponse> {
    return this.layout(`/sessions/${sessionId}/generate/room`, this.post(params));
  }

  /** Non-stepped growth: runs to completion, returns the layout document. */
  generateGrowth(sessionId: string, body: Record<string, unknown>): Promise<LayoutResponse> {
    return this.layout(`/sessions/${sessionId}/generate/growth`, this.post(body));
  }

  /** Stepped growth: creates a job and returns the first snapshot. */
  startGrowthJob(sessionId: string, body: Record<string, unknown>): Promise<GrowthJobResponse> {
    return this.json(`/sessions/${sessionId}/generate/growth`,
      this.post({ ...body, step_mode: true }));
  }

  growthStep(sessionId: string, passes = 1): Promise<GrowthJobResponse> {
    return this.json(`/sessions/${sessionId}/generate/growth/step`, this.post({ passes }));
  }

  growthPause(sessionId: string): Promise<{ paused: boolean }> {
    return this.json(`/sessions/${sessionId}/generate/growth/pause`, this.post({}));
  }

  growthResume(sessionId: string): Promise<{ paused: boolean }> {
    return this.json(`/sessions/${sessionId}/generate/growth/resume`, this.post({}));
  }

  getScene(sessionId: string): Promise<LayoutResponse> {
    return this.layout(`/sessions/${sessionId}/scene`);
  }

  patchLighting(
    sessionId: string,
    changes: Record<string, unknown>,
  ): Promise<{ temperature_k: number; color: [number, number, number] }> {
    return this.json(`/sessions/${sessionId}/scene/lighting`, {
      method: "PATCH",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(changes),
    });
  }

  exportObjUrl(sessionId: string): string {
    return `${this.base}/sessions/${sessionId}/export/obj`;
  }
}
