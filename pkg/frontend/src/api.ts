/**
 * REST client for the session server. Every server interaction the UI makes
 * goes through here; no other module touches fetch.
 */

import type {
  ApiError,
  CanvasOpName,
  MessageResponse,
  OpResponse,
  SessionState,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseError(response: Response): Promise<ApiError> {
  let code = "http_error";
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body: keep the defaults
  }
  const error = new Error(message) as ApiError;
  error.code = code;
  error.status = response.status;
  return error;
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createSession(): Promise<SessionState> {
    return this.post<SessionState>("/sessions", {});
  }

  getSession(sessionId: string): Promise<SessionState> {
    return this.request<SessionState>(`/sessions/${sessionId}`);
  }

  postMessage(sessionId: string, text: string): Promise<MessageResponse> {
    return this.post<MessageResponse>(`/sessions/${sessionId}/messages`, { text });
  }

  canvasOp(
    sessionId: string,
    op: CanvasOpName,
    payload: Record<string, unknown>,
  ): Promise<OpResponse> {
    return this.post<OpResponse>(`/sessions/${sessionId}/canvas`, { op, payload });
  }

  applyLayout(sessionId: string, resourceId: string): Promise<OpResponse> {
    return this.post<OpResponse>(`/sessions/${sessionId}/layout/apply`, {
      resource_id: resourceId,
    });
  }

  exportSvgUrl(sessionId: string): string {
    return `${this.base}/sessions/${sessionId}/export.svg`;
  }
}
