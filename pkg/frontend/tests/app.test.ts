/**
 * End-to-end explorer behavior against frozen real service responses:
 * the example2 workflow reaches C2, the k sweep never shrinks the canvas,
 * and every displayed score equals the intercepted response value.
 */

import { beforeEach, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { ExplorerApp } from "../src/app.js";
import type { UnitsResponse } from "../src/types.js";
import { FIXTURES, stubService, unitsForQuery, type StubService } from "./helpers.js";

function makeApp(fixture = "example2"): { app: ExplorerApp; stub: StubService; root: HTMLElement } {
  document.body.innerHTML = '<div id="app"></div>';
  const root = document.getElementById("app")!;
  const stub = stubService(fixture);
  const app = new ExplorerApp(root, new ServiceClient("http://svc", stub.fetch));
  return { app, stub, root };
}

function canvasNodeIds(root: HTMLElement): Set<string> {
  return new Set(
    [...root.querySelectorAll('[data-testid="canvas"] g.node:not(.outside-unit)')]
      .map((g) => g.getAttribute("data-id")!),
  );
}

function setValue(root: HTMLElement, testid: string, value: string): void {
  const input = root.querySelector(`[data-testid="${testid}"]`) as HTMLInputElement;
  input.value = value;
}

describe("example2 workflow", () => {
  let app: ExplorerApp;
  let stub: StubService;
  let root: HTMLElement;

  beforeEach(async () => {
    ({ app, stub, root } = makeApp());
    await app.loadFixture();
    app.addSeed("C1");
  });

  it("run renders a GraphUnit containing C2", async () => {
    await app.run();
    const rendered = canvasNodeIds(root);
    expect(rendered.has("C2")).toBe(true);
    expect(rendered).toEqual(new Set(["C1", "M1", "C2"]));
    // seed emphasized
    const seed = root.querySelector('g.node.seed[data-id="C1"]');
    expect(seed).not.toBeNull();
    expect(seed!.querySelector(".seed-ring")).not.toBeNull();
  });

  it("k slider sweep from 1.0 to 0.0 never decreases the node count", async () => {
    let previous = -1;
    for (const k of ["1.0", "0.7", "0.3", "0.0"]) {
      setValue(root, "k-slider", k);
      await app.steer("fast");
      const count = canvasNodeIds(root).size;
      expect(count).toBeGreaterThanOrEqual(previous);
      previous = count;
    }
    expect(previous).toBe(5); // k=0 fixture holds the full admissible set
  });

  it("every displayed score equals the intercepted response value", async () => {
    await app.run();
    const lastQuery = stub.calls.filter((c) => c.url.includes("graphunits")).at(-1)!;
    const response = unitsForQuery(lastQuery.body!) as UnitsResponse;
    const byId = new Map(response.units[0].nodes.map((n) => [n.id, n.score]));
    const rendered = [...root.querySelectorAll("g.node")];
    expect(rendered.length).toBeGreaterThan(0);
    for (const g of rendered) {
      const id = g.getAttribute("data-id")!;
      expect(g.getAttribute("data-score")).toBe(String(byId.get(id)));
    }
    // inspector shows the rounded view with full precision on demand
    app.selectNode("C2");
    const row = [...root.querySelectorAll(".inspector-row")]
      .find((r) => r.textContent!.includes("propagated interest"))!;
    const value = row.querySelector(".value")!;
    const raw = byId.get("C2")!;
    expect(value.textContent).toBe(raw.toFixed(3));
    expect(value.getAttribute("title")).toBe(String(raw));
  });

  it("edge inspector shows score, fraud rate, and transactions from the response", async () => {
    await app.run();
    const response = unitsForQuery({ k: 0.7 }) as UnitsResponse;
    const fraudEdge = response.units[0].edges.find((e) => e.fraud_rate > 0)!;
    app.selectEdge(fraudEdge);
    const text = root.querySelector('[data-testid="inspector"]')!.textContent!;
    expect(text).toContain(fraudEdge.fraud_rate.toFixed(3));
    expect(text).toContain("transaction (fraud)");
  });

  it("fraud edges are drawn distinctly", async () => {
    await app.run();
    const fraud = [...root.querySelectorAll("line.edge.fraud")];
    const plain = [...root.querySelectorAll("line.edge:not(.fraud)")];
    // the k=0.7 unit holds exactly C1-M1 (legitimate) and C2-M1 (fraud)
    expect(fraud.map((l) => [l.getAttribute("data-src"), l.getAttribute("data-dst")]))
      .toEqual([["C2", "M1"]]);
    expect(plain.map((l) => [l.getAttribute("data-src"), l.getAttribute("data-dst")]))
      .toEqual([["C1", "M1"]]);
  });

  it("identical queries render identical canvases", async () => {
    await app.run();
    const first = root.querySelector('[data-testid="canvas"]')!.innerHTML;
    await app.run();
    const second = root.querySelector('[data-testid="canvas"]')!.innerHTML;
    expect(second).toBe(first);
  });

  it("theta toggle re-queries and re-renders with the service's answer", async () => {
    await app.run();
    const before = canvasNodeIds(root);
    const thetaSelect = root.querySelector('[data-testid="theta-select"]') as HTMLSelectElement;
    thetaSelect.value = "reciprocal";
    await app.steer("fast");
    const after = canvasNodeIds(root);
    const expected = new Set(
      (FIXTURES.unitsReciprocal as UnitsResponse).units[0].nodes.map((n) => n.id));
    expect(after).toEqual(expected);
    expect(before).not.toEqual(after);
    const queries = stub.calls.filter((c) => c.url.includes("graphunits"));
    expect(queries.at(-1)!.body!.theta).toBe("reciprocal");
  });

  it("a second seed yields two highlighted units with a legend", async () => {
    app.addSeed("C2");
    await app.run();
    const ringed = [...root.querySelectorAll("g.node.seed")]
      .map((g) => g.getAttribute("data-id"));
    expect(new Set(ringed)).toEqual(new Set(["C1", "C2"]));
    const legendUnits = [...root.querySelectorAll(".legend-unit")]
      .map((entry) => entry.getAttribute("data-seed"));
    expect(legendUnits).toEqual(["C1", "C2"]);
  });

  it("history strip flips between recent what-if results", async () => {
    await app.run();
    setValue(root, "k-slider", "0.0");
    await app.steer("fast");
    expect(canvasNodeIds(root).size).toBe(5);

    const entries = root.querySelectorAll(".history-entry");
    expect(entries.length).toBe(2);
    (entries[0] as HTMLButtonElement).click();
    expect(canvasNodeIds(root).size).toBe(3);  // back to the k=0.7 view
    expect(app.state.params.k).toBe(0.7);
  });
});

describe("request discipline", () => {
  it("empty seed selection issues no request and keeps the prompt", async () => {
    const { app, stub, root } = makeApp();
    await app.loadFixture();
    const before = stub.calls.length;
    await app.run();
    expect(stub.calls.length).toBe(before);
    const prompt = root.querySelector('[data-testid="prompt"]')!;
    expect(prompt.classList.contains("hidden")).toBe(false);
  });

  it("out-of-range parameters are rejected at the control, never sent", async () => {
    const { app, stub, root } = makeApp();
    await app.loadFixture();
    app.addSeed("C1");
    setValue(root, "h-input", "-3");
    const before = stub.calls.filter((c) => c.url.includes("graphunits")).length;
    await app.run();
    expect(stub.calls.filter((c) => c.url.includes("graphunits")).length).toBe(before);
    const banner = root.querySelector('[data-testid="banner"]')!;
    expect(banner.textContent).toContain("h must be");
  });

  it("service errors surface in a non-blocking banner", async () => {
    document.body.innerHTML = '<div id="app"></div>';
    const root = document.getElementById("app")!;
    const failing = new ServiceClient("http://svc", async () =>
      new Response(JSON.stringify({ detail: "boom" }), { status: 500 }));
    const app = new ExplorerApp(root, failing);
    await app.loadFixture();
    const banner = root.querySelector('[data-testid="banner"]')!;
    expect(banner.classList.contains("hidden")).toBe(false);
    expect(banner.textContent).toContain("boom");
    // the app stays interactive: controls still present
    expect(root.querySelector('[data-testid="run"]')).not.toBeNull();
  });
});

describe("manual expansion fallback", () => {
  it("overlays the dimmed neighborhood and collapse restores the canvas exactly", async () => {
    const { app, root } = makeApp("example3");
    await app.loadFixture();
    app.addSeed("C1");
    await app.run();
    const before = root.querySelector('[data-testid="canvas"]')!.innerHTML;
    expect(canvasNodeIds(root)).toEqual(new Set(["C1", "D1", "IP1"]));

    // expanding the visible seed surfaces the merchant the unit skipped
    app.selectNode("C1");
    await app.manualExpand();
    let dimmed = [...root.querySelectorAll("g.node.outside-unit")]
      .map((g) => g.getAttribute("data-id"));
    expect(dimmed).toEqual(["M1"]);

    // expanding that merchant brings its whole customer fan in, dimmed
    app.selectNode("M1");
    await app.manualExpand();
    dimmed = [...root.querySelectorAll("g.node.outside-unit")]
      .map((g) => g.getAttribute("data-id"));
    expect(dimmed).toContain("M1");
    expect(dimmed).toContain("C5");
    expect(canvasNodeIds(root)).toEqual(new Set(["C1", "D1", "IP1"]));

    app.collapseOverlay();
    const after = root.querySelector('[data-testid="canvas"]')!.innerHTML;
    expect(after).toBe(before);
  });
});
