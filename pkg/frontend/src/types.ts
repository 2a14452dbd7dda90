/** Wire types for the expansion service, mirrored from its JSON responses. */

export interface TransactionRow {
  timestamp: number;
  amount: number;
  is_fraud: boolean;
}

export interface UnitNode {
  id: string;
  type: string;
  /** Propagated interest in [0, 1]; null in neighborhood responses before any query. */
  score: number | null;
}

export interface UnitEdge {
  src: string;
  dst: string;
  /** Initial edge interest in [0, 1]; null in neighborhood responses before any query. */
  score: number | null;
  fraud_rate: number;
  transactions?: TransactionRow[];
}

export interface GraphUnitRow {
  seed: string;
  nodes: UnitNode[];
  edges: UnitEdge[];
}

export interface UnitsResponse {
  units: GraphUnitRow[];
  stats: Record<string, number>;
}

export interface SessionSummary {
  nodes: number;
  edges: number;
  transactions: number;
  nodes_by_type: Record<string, number>;
}

export interface SessionResponse {
  session_id: string;
  summary: SessionSummary;
}

export interface NeighborhoodResponse {
  center: string;
  radius: number;
  nodes: UnitNode[];
  edges: UnitEdge[];
}

export type GammaChoice = "mean_blend" | "max_blend" | "min_blend";
export type ThetaChoice = "exponential" | "reciprocal";

export interface QueryParams {
  h: number;
  k: number;
  gamma: GammaChoice;
  theta: ThetaChoice;
}

export const DEFAULT_PARAMS: QueryParams = {
  h: 5,
  k: 0.7,
  gamma: "mean_blend",
  theta: "exponential",
};

export const FIXTURE_NAMES = [
  "example1",
  "example2",
  "example3",
  "example4",
  "example5",
] as const;
