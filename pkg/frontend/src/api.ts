// Thin typed client for the play service.  All legality decisions come back
// from the server; errors carry the server's code and message verbatim so
// the UI can surface them without interpretation.

import type {
  ApiErrorBody,
  CreateSessionRequest,
  Projection,
  SessionView,
} from "./types";

export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: unknown;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.detail = body.detail;
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class GhostClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    const text = await response.text();
    const body = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const error: ApiErrorBody =
        body && typeof body.code === "string"
          ? body
          : { code: "http_error", message: `${response.status}` };
      throw new ApiRequestError(response.status, error);
    }
    return body as T;
  }

  listInstances(): Promise<{ instances: string[] }> {
    return this.request("/instances");
  }

  createSession(body: CreateSessionRequest): Promise<SessionView> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  getSession(id: string, reveal = false): Promise<SessionView> {
    return this.request(`/sessions/${id}${reveal ? "?reveal=true" : ""}`);
  }

  postMove(
    id: string,
    atom: number,
    district: number,
    reveal = false,
  ): Promise<SessionView> {
    return this.request(`/sessions/${id}/moves${reveal ? "?reveal=true" : ""}`, {
      method: "POST",
      body: JSON.stringify({ atom, district }),
    });
  }

  whatIf(id: string, atom: number, district: number): Promise<Projection> {
    return this.request(`/sessions/${id}/whatif?reveal=true`, {
      method: "POST",
      body: JSON.stringify({ atom, district }),
    });
  }
}
