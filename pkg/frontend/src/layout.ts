/**
 * Deterministic force-directed layout.
 *
 * Positions are a pure function of the response: the PRNG is seeded from a
 * hash of the response JSON, seeds are pinned at the canvas center, and the
 * simulation runs a fixed number of steps. Identical queries therefore
 * render identically.
 */

import type { UnitsResponse } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

/** FNV-1a over the serialized response; stable across sessions. */
export function hashResponse(payload: unknown): number {
  const text = JSON.stringify(payload);
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return hash >>> 0;
}

/** mulberry32: tiny seeded PRNG, plenty for layout jitter. */
export function seededRandom(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const STEPS = 150;
const SPRING_LENGTH = 90;
const SPRING_STRENGTH = 0.03;
const REPULSION = 4200;
const CENTER_PULL = 0.012;

export function layoutResponse(
  response: UnitsResponse,
  width: number,
  height: number,
): Map<string, Point> {
  const ids: string[] = [];
  const seen = new Set<string>();
  const seedIds = new Set<string>();
  const edges: Array<[string, string]> = [];
  for (const unit of response.units) {
    seedIds.add(unit.seed);
    for (const node of unit.nodes) {
      if (!seen.has(node.id)) {
        seen.add(node.id);
        ids.push(node.id);
      }
    }
    for (const edge of unit.edges) edges.push([edge.src, edge.dst]);
  }
  return runSimulation(ids, edges, seedIds, width, height, hashResponse(response));
}

export function runSimulation(
  ids: string[],
  edges: Array<[string, string]>,
  pinned: Set<string>,
  width: number,
  height: number,
  seed: number,
  initial?: Map<string, Point>,
): Map<string, Point> {
  const random = seededRandom(seed);
  const cx = width / 2;
  const cy = height / 2;
  const index = new Map(ids.map((id, i) => [id, i]));
  const xs = new Float64Array(ids.length);
  const ys = new Float64Array(ids.length);

  // pinned nodes keep their given positions, or sit evenly spaced near the
  // center when none were provided; the rest start on a jittered ring
  const pinnedList = ids.filter((id) => pinned.has(id));
  pinnedList.forEach((id, i) => {
    const given = initial?.get(id);
    const angle = (2 * Math.PI * i) / Math.max(pinnedList.length, 1);
    const spread = pinnedList.length > 1 ? 40 : 0;
    xs[index.get(id)!] = given ? given.x : cx + spread * Math.cos(angle);
    ys[index.get(id)!] = given ? given.y : cy + spread * Math.sin(angle);
  });
  for (const id of ids) {
    if (pinned.has(id)) continue;
    const given = initial?.get(id);
    if (given) {
      xs[index.get(id)!] = given.x;
      ys[index.get(id)!] = given.y;
      continue;
    }
    const angle = random() * 2 * Math.PI;
    const radius = 60 + random() * Math.min(width, height) * 0.3;
    xs[index.get(id)!] = cx + radius * Math.cos(angle);
    ys[index.get(id)!] = cy + radius * Math.sin(angle);
  }

  const edgePairs = edges
    .map(([a, b]) => [index.get(a), index.get(b)] as const)
    .filter(([a, b]) => a !== undefined && b !== undefined) as Array<[number, number]>;

  for (let step = 0; step < STEPS; step++) {
    const cooling = 1 - step / STEPS;
    const fx = new Float64Array(ids.length);
    const fy = new Float64Array(ids.length);

    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        let dx = xs[i] - xs[j];
        let dy = ys[i] - ys[j];
        let sq = dx * dx + dy * dy;
        if (sq < 1) {
          // coincident points: push apart along a deterministic direction
          dx = 0.5 + (i % 3);
          dy = 0.5 + (j % 3);
          sq = dx * dx + dy * dy;
        }
        const force = REPULSION / sq;
        const dist = Math.sqrt(sq);
        fx[i] += (dx / dist) * force;
        fy[i] += (dy / dist) * force;
        fx[j] -= (dx / dist) * force;
        fy[j] -= (dy / dist) * force;
      }
    }
    for (const [a, b] of edgePairs) {
      const dx = xs[b] - xs[a];
      const dy = ys[b] - ys[a];
      const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const stretch = (dist - SPRING_LENGTH) * SPRING_STRENGTH;
      fx[a] += (dx / dist) * stretch * dist;
      fy[a] += (dy / dist) * stretch * dist;
      fx[b] -= (dx / dist) * stretch * dist;
      fy[b] -= (dy / dist) * stretch * dist;
    }
    for (let i = 0; i < ids.length; i++) {
      if (pinned.has(ids[i])) continue;
      fx[i] += (cx - xs[i]) * CENTER_PULL * Math.sqrt(ids.length);
      fy[i] += (cy - ys[i]) * CENTER_PULL * Math.sqrt(ids.length);
      const cap = 18 * cooling + 2;
      xs[i] += clamp(fx[i] * 0.01, cap);
      ys[i] += clamp(fy[i] * 0.01, cap);
      xs[i] = Math.min(Math.max(xs[i], 20), width - 20);
      ys[i] = Math.min(Math.max(ys[i], 20), height - 20);
    }
  }

  return new Map(ids.map((id) => [id, { x: xs[index.get(id)!], y: ys[index.get(id)!] }]));
}

function clamp(value: number, bound: number): number {
  return Math.max(Math.min(value, bound), -bound);
}
