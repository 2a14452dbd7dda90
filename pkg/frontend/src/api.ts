/**
 * Typed client for the expansion service.
 *
 * Every number the UI displays originates from one of these responses; the
 * client never post-processes score values. GraphUnit queries cancel any
 * still-running predecessor so a rapid slider drag settles on the last
 * request.
 */

import type {
  NeighborhoodResponse,
  QueryParams,
  SessionResponse,
  SessionSummary,
  UnitsResponse,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Optional interest-spec overrides riding along with a query. */
export interface SpecOverrides {
  vudie?: Record<string, unknown>;
  ludie?: Record<string, unknown>;
}

export class ServiceError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
    this.name = "ServiceError";
  }
}

async function parseOrThrow<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ServiceError(detail, response.status);
  }
  return (await response.json()) as T;
}

export class ServiceClient {
  private inflight: AbortController | null = null;

  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.fetchImpl(this.url("/healthz"));
      return response.ok;
    } catch {
      return false;
    }
  }

  async createFixtureSession(fixture: string): Promise<SessionResponse> {
    const response = await this.fetchImpl(this.url("/sessions"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ fixture }),
    });
    return parseOrThrow<SessionResponse>(response);
  }

  async createUploadSession(nodesCsv: File, transactionsCsv: File): Promise<SessionResponse> {
    const form = new FormData();
    form.append("nodes", nodesCsv);
    form.append("transactions", transactionsCsv);
    const response = await this.fetchImpl(this.url("/sessions"), {
      method: "POST",
      body: form as unknown as BodyInit,
    });
    return parseOrThrow<SessionResponse>(response);
  }

  async summary(sessionId: string): Promise<SessionSummary> {
    const response = await this.fetchImpl(this.url(`/sessions/${sessionId}/summary`));
    return parseOrThrow<SessionSummary>(response);
  }

  /**
   * Query GraphUnits; a new call aborts the previous one (stale responses
   * reject with AbortError and must not reach the canvas).
   */
  async queryGraphUnits(
    sessionId: string,
    seeds: string[],
    params: QueryParams & SpecOverrides,
  ): Promise<UnitsResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const response = await this.fetchImpl(this.url(`/sessions/${sessionId}/graphunits`), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ seeds, ...params }),
        signal: controller.signal,
      });
      return await parseOrThrow<UnitsResponse>(response);
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }

  async neighborhood(
    sessionId: string,
    node: string,
    radius = 1,
  ): Promise<NeighborhoodResponse> {
    const query = `?node=${encodeURIComponent(node)}&radius=${radius}`;
    const response = await this.fetchImpl(
      this.url(`/sessions/${sessionId}/neighborhood${query}`),
    );
    return parseOrThrow<NeighborhoodResponse>(response);
  }
}
