/**
 * Inspector content: label/value rows for the selected node or edge.
 *
 * Scores display rounded to 3 decimals for legibility; the full-precision
 * string from the response rides along for on-demand display (shown in the
 * row tooltip). Values are never recomputed, only formatted.
 */

import type { UnitEdge, UnitNode } from "./types.js";

export interface InspectorRow {
  label: string;
  value: string;
  /** Full-precision raw value when `value` is a rounded view of it. */
  full?: string;
}

export function formatScore(score: number | null): { value: string; full: string } {
  if (score === null) return { value: "n/a", full: "n/a" };
  return { value: score.toFixed(3), full: String(score) };
}

export function nodeInspectorRows(node: UnitNode, inUnit: boolean): InspectorRow[] {
  const score = formatScore(node.score);
  const rows: InspectorRow[] = [
    { label: "node", value: node.id },
    { label: "type", value: node.type },
    { label: "propagated interest", value: score.value, full: score.full },
  ];
  if (!inUnit) rows.push({ label: "membership", value: "outside GraphUnit" });
  return rows;
}

export function edgeInspectorRows(edge: UnitEdge): InspectorRow[] {
  const score = formatScore(edge.score);
  const rows: InspectorRow[] = [
    { label: "edge", value: `${edge.src} - ${edge.dst}` },
    { label: "edge interest", value: score.value, full: score.full },
    { label: "fraud rate", value: edge.fraud_rate.toFixed(3), full: String(edge.fraud_rate) },
  ];
  for (const tx of edge.transactions ?? []) {
    rows.push({
      label: tx.is_fraud ? "transaction (fraud)" : "transaction",
      value: `${tx.amount} at ${new Date(tx.timestamp * 1000).toISOString()}`,
    });
  }
  return rows;
}
