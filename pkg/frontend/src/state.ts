/**
 * View state: everything needed to reconstruct the canvas without asking
 * the service again. Parameter values are validated here before any
 * request is allowed out.
 */

import type {
  NeighborhoodResponse,
  QueryParams,
  SessionSummary,
  UnitsResponse,
} from "./types.js";
import { DEFAULT_PARAMS } from "./types.js";

export interface HistoryEntry {
  label: string;
  seeds: string[];
  params: QueryParams;
  response: UnitsResponse;
}

const HISTORY_LIMIT = 8;

export function validateParams(params: QueryParams): string[] {
  const problems: string[] = [];
  if (!Number.isInteger(params.h) || params.h < 0) {
    problems.push("h must be a non-negative integer");
  }
  if (!Number.isFinite(params.k) || params.k < 0 || params.k > 1) {
    problems.push("k must lie in [0, 1]");
  }
  if (!["mean_blend", "max_blend", "min_blend"].includes(params.gamma)) {
    problems.push(`unknown gamma ${params.gamma}`);
  }
  if (!["exponential", "reciprocal"].includes(params.theta)) {
    problems.push(`unknown theta ${params.theta}`);
  }
  return problems;
}

export class ViewState {
  sessionId: string | null = null;
  summary: SessionSummary | null = null;
  seeds: string[] = [];
  params: QueryParams = { ...DEFAULT_PARAMS };
  current: HistoryEntry | null = null;
  history: HistoryEntry[] = [];
  /** Manual-expansion overlay; null when the canvas shows the unit alone. */
  overlay: NeighborhoodResponse | null = null;
  selected: string | null = null;

  openSession(sessionId: string, summary: SessionSummary): void {
    this.sessionId = sessionId;
    this.summary = summary;
    this.seeds = [];
    this.current = null;
    this.history = [];
    this.overlay = null;
    this.selected = null;
  }

  /** True when a run may be issued: session open, seeds picked, params valid. */
  canQuery(): boolean {
    return (
      this.sessionId !== null &&
      this.seeds.length > 0 &&
      validateParams(this.params).length === 0
    );
  }

  pushResult(seeds: string[], params: QueryParams, response: UnitsResponse): HistoryEntry {
    const label =
      `k=${params.k} h=${params.h} ` +
      `${params.gamma.replace("_blend", "")}/${params.theta} ` +
      `seeds=${seeds.join(",")}`;
    const entry: HistoryEntry = {
      label,
      seeds: [...seeds],
      params: { ...params },
      response,
    };
    this.history.push(entry);
    if (this.history.length > HISTORY_LIMIT) this.history.shift();
    this.current = entry;
    this.overlay = null;
    return entry;
  }

  /** Flip the canvas back to an earlier what-if result. */
  flipTo(index: number): HistoryEntry | null {
    const entry = this.history[index];
    if (!entry) return null;
    this.current = entry;
    this.overlay = null;
    this.seeds = [...entry.seeds];
    this.params = { ...entry.params };
    return entry;
  }

  /** Node ids currently inside the displayed unit(s). */
  unitMembers(): Set<string> {
    const members = new Set<string>();
    for (const unit of this.current?.response.units ?? []) {
      for (const node of unit.nodes) members.add(node.id);
    }
    return members;
  }

  nodeCount(): number {
    return this.unitMembers().size;
  }
}
