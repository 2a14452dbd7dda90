/**
 * A stub service backed by frozen responses captured from the real HTTP
 * service (scripts/freeze_ui_fixtures.py in the repo root). Tests assert
 * that what the UI displays equals what these payloads contain, so the UI
 * provably never computes values itself.
 */

import type { FetchLike } from "../src/api.js";

import sessionExample2 from "./fixtures/session_example2.json";
import unitsK100 from "./fixtures/units_example2_k100.json";
import unitsK070 from "./fixtures/units_example2_k070.json";
import unitsK030 from "./fixtures/units_example2_k030.json";
import unitsK000 from "./fixtures/units_example2_k000.json";
import unitsReciprocal from "./fixtures/units_example2_reciprocal.json";
import unitsTwoSeeds from "./fixtures/units_example2_two_seeds.json";
import unitsExample3 from "./fixtures/units_example3_default.json";
import neighborhoodM1 from "./fixtures/neighborhood_example3_m1.json";
import neighborhoodC1 from "./fixtures/neighborhood_example3_c1.json";

export const FIXTURES = {
  sessionExample2,
  unitsK100,
  unitsK070,
  unitsK030,
  unitsK000,
  unitsReciprocal,
  unitsTwoSeeds,
  unitsExample3,
  neighborhoodM1,
  neighborhoodC1,
};

export interface RecordedCall {
  url: string;
  method: string;
  body: Record<string, unknown> | null;
}

export interface StubService {
  fetch: FetchLike;
  calls: RecordedCall[];
}

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export function unitsForQuery(body: Record<string, unknown>): unknown {
  if (body.theta === "reciprocal") return unitsReciprocal;
  const k = typeof body.k === "number" ? body.k : 0.7;
  if (k >= 1.0) return unitsK100;
  if (k >= 0.7) return unitsK070;
  if (k >= 0.3) return unitsK030;
  return unitsK000;
}

/** Routes the explorer's requests onto the frozen payloads. */
export function stubService(fixture = "example2"): StubService {
  const calls: RecordedCall[] = [];
  const stub: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const body = typeof init?.body === "string"
      ? (JSON.parse(init.body) as Record<string, unknown>)
      : null;
    calls.push({ url, method, body });

    if (url.endsWith("/healthz")) return jsonResponse({ status: "ok" });
    if (url.endsWith("/sessions") && method === "POST") {
      return jsonResponse(sessionExample2);
    }
    if (url.includes("/graphunits")) {
      if (fixture === "example3") return jsonResponse(unitsExample3);
      const seeds = (body?.seeds as string[]) ?? [];
      if (seeds.length > 1) return jsonResponse(unitsTwoSeeds);
      return jsonResponse(unitsForQuery(body ?? {}));
    }
    if (url.includes("/neighborhood")) {
      const node = new URL(url).searchParams.get("node");
      return jsonResponse(node === "C1" ? neighborhoodC1 : neighborhoodM1);
    }
    return jsonResponse({ detail: `unrouted ${method} ${url}` }, 404);
  };
  return { fetch: stub, calls };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
