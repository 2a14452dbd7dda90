/**
 * SVG node-link rendering of a GraphUnit response, plus the dimmed overlay
 * used by manual expansion. Every data-* attribute carries raw response
 * values so nothing displayed is recomputed client-side.
 */

import type { Point } from "./layout.js";
import type { NeighborhoodResponse, UnitEdge, UnitNode, UnitsResponse } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export const TYPE_COLORS: Record<string, string> = {
  customer: "#4e79a7",
  merchant: "#f28e2b",
  device: "#59a14f",
  ip: "#b07aa1",
  generic: "#9c9c9c",
};

export interface RenderCallbacks {
  onNodeClick?: (nodeId: string) => void;
  onNodeHover?: (nodeId: string | null) => void;
  onEdgeClick?: (edge: UnitEdge) => void;
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const element = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    element.setAttribute(key, String(value));
  }
  return element;
}

function nodeRadius(score: number | null): number {
  return score === null ? 9 : 7 + 9 * score;
}

/** Heat shading: low interest fades toward white, high interest saturates. */
function heatOpacity(score: number | null): number {
  return score === null ? 0.5 : 0.3 + 0.7 * score;
}

export function renderUnits(
  svg: SVGSVGElement,
  response: UnitsResponse,
  positions: Map<string, Point>,
  callbacks: RenderCallbacks = {},
  overlay: NeighborhoodResponse | null = null,
  overlayPositions: Map<string, Point> | null = null,
): void {
  svg.textContent = "";
  const seedIds = new Set(response.units.map((unit) => unit.seed));
  const members = new Set<string>();
  const nodes = new Map<string, UnitNode>();
  const edges: UnitEdge[] = [];
  for (const unit of response.units) {
    for (const node of unit.nodes) {
      members.add(node.id);
      if (!nodes.has(node.id)) nodes.set(node.id, node);
    }
    edges.push(...unit.edges);
  }

  const edgeLayer = svgElement("g", { class: "edges" });
  const nodeLayer = svgElement("g", { class: "nodes" });
  svg.append(edgeLayer, nodeLayer);

  if (overlay && overlayPositions) {
    renderOverlay(edgeLayer, nodeLayer, overlay, members, overlayPositions, callbacks);
  }

  for (const edge of edges) {
    const a = positions.get(edge.src);
    const b = positions.get(edge.dst);
    if (!a || !b) continue;
    const line = svgElement("line", {
      x1: a.x, y1: a.y, x2: b.x, y2: b.y,
      class: edge.fraud_rate > 0 ? "edge fraud" : "edge",
      "data-src": edge.src,
      "data-dst": edge.dst,
      "data-score": edge.score === null ? "" : String(edge.score),
    });
    line.addEventListener("click", () => callbacks.onEdgeClick?.(edge));
    edgeLayer.append(line);
  }

  for (const node of nodes.values()) {
    const at = positions.get(node.id);
    if (!at) continue;
    nodeLayer.append(drawNode(node, at, seedIds.has(node.id), false, callbacks));
  }
}

function renderOverlay(
  edgeLayer: SVGGElement,
  nodeLayer: SVGGElement,
  overlay: NeighborhoodResponse,
  members: Set<string>,
  positions: Map<string, Point>,
  callbacks: RenderCallbacks,
): void {
  for (const edge of overlay.edges) {
    const a = positions.get(edge.src);
    const b = positions.get(edge.dst);
    if (!a || !b) continue;
    if (members.has(edge.src) && members.has(edge.dst)) continue;
    edgeLayer.append(svgElement("line", {
      x1: a.x, y1: a.y, x2: b.x, y2: b.y,
      class: edge.fraud_rate > 0 ? "edge outside-unit fraud" : "edge outside-unit",
      "data-src": edge.src,
      "data-dst": edge.dst,
    }));
  }
  for (const node of overlay.nodes) {
    if (members.has(node.id)) continue;
    const at = positions.get(node.id);
    if (!at) continue;
    nodeLayer.append(drawNode(node, at, false, true, callbacks));
  }
}

function drawNode(
  node: UnitNode,
  at: Point,
  isSeed: boolean,
  outsideUnit: boolean,
  callbacks: RenderCallbacks,
): SVGGElement {
  const classes = ["node"];
  if (isSeed) classes.push("seed");
  if (outsideUnit) classes.push("outside-unit");
  const group = svgElement("g", {
    class: classes.join(" "),
    transform: `translate(${at.x},${at.y})`,
    "data-id": node.id,
    "data-type": node.type,
    "data-score": node.score === null ? "" : String(node.score),
  });
  const radius = nodeRadius(node.score);
  if (isSeed) {
    group.append(svgElement("circle", {
      r: radius + 4, fill: "none", stroke: "#333", "stroke-width": 1.5,
      class: "seed-ring",
    }));
  }
  const fill = TYPE_COLORS[node.type] ?? TYPE_COLORS.generic;
  group.append(svgElement("circle", {
    r: radius,
    fill,
    "fill-opacity": outsideUnit ? 0.25 : heatOpacity(node.score),
    stroke: "#444",
    "stroke-width": isSeed ? 2 : 1,
  }));
  const label = svgElement("text", { y: radius + 12, "text-anchor": "middle" });
  label.textContent = node.id;
  group.append(label);
  group.addEventListener("click", () => callbacks.onNodeClick?.(node.id));
  group.addEventListener("mouseenter", () => callbacks.onNodeHover?.(node.id));
  group.addEventListener("mouseleave", () => callbacks.onNodeHover?.(null));
  return group;
}
