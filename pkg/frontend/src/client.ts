// Thin typed wrapper over the session-service HTTP API plus the per-tick
// sample stream. All simulation state changes go through submitControl; the
// client never computes poses itself.

import type {
  ControlInput,
  PlanDoc,
  SampleDoc,
  SceneDoc,
  SessionConfigDoc,
  SessionSummary,
} from "./types.js";

export class ServiceError extends Error {
  constructor(public status: number, detail: string) {
    super(`service error ${status}: ${detail}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // leave the status text
    }
    throw new ServiceError(response.status, detail);
  }
  return (await response.json()) as T;
}

function post<T>(url: string, payload: unknown): Promise<T> {
  return request<T>(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload ?? {}),
  });
}

export class ServiceClient {
  constructor(readonly baseUrl: string) {}

  listScenes(): Promise<{ scenes: string[] }> {
    return request(`${this.baseUrl}/scenes`);
  }

  getScene(name: string): Promise<SceneDoc> {
    return request(`${this.baseUrl}/scenes/${encodeURIComponent(name)}`);
  }

  createSession(config: SessionConfigDoc): Promise<{ id: string }> {
    return post(`${this.baseUrl}/sessions`, config);
  }

  submitControl(sessionId: string, control: ControlInput): Promise<{ ok: boolean }> {
    return post(`${this.baseUrl}/sessions/${sessionId}/control`, control);
  }

  getState(sessionId: string): Promise<{ sample: SampleDoc | null; status: string }> {
    return request(`${this.baseUrl}/sessions/${sessionId}/state`);
  }

  endSession(sessionId: string): Promise<SessionSummary> {
    return post(`${this.baseUrl}/sessions/${sessionId}/end`, {});
  }

  mine(sessionIds: string[]): Promise<{ model_id: string }> {
    return post(`${this.baseUrl}/mine`, { session_ids: sessionIds });
  }

  createPlan(
    modelId: string,
    checklistId: string,
    start: [number, number, number],
    totalSpheres: number,
  ): Promise<{ plan_id: string }> {
    return post(`${this.baseUrl}/plans`, {
      model_id: modelId,
      checklist_id: checklistId,
      start,
      total_spheres: totalSpheres,
    });
  }

  getPlan(planId: string): Promise<PlanDoc> {
    return request(`${this.baseUrl}/plans/${encodeURIComponent(planId)}`);
  }

  streamUrl(sessionId: string): string {
    return `${this.baseUrl.replace(/^http/, "ws")}/sessions/${sessionId}/stream`;
  }
}

/** Subscribe to the per-tick sample stream (session-log line schema). */
export function openSampleStream(
  client: ServiceClient,
  sessionId: string,
  onSample: (sample: SampleDoc) => void,
  socketCtor: typeof WebSocket = WebSocket,
): () => void {
  const socket = new socketCtor(client.streamUrl(sessionId));
  socket.onmessage = (event) => onSample(JSON.parse(event.data as string));
  return () => socket.close();
}
