/**
 * Explorer application: session loading, seed picking, parameter steering,
 * and the rendered GraphUnit canvas with inspector, history, and manual
 * expansion fallback.
 *
 * The app never computes scores or expansions; it renders service
 * responses and re-queries when steering changes. The previous view stays
 * on screen until a newer result arrives.
 */

import { ServiceClient, ServiceError, type SpecOverrides } from "./api.js";
import { edgeInspectorRows, nodeInspectorRows, type InspectorRow } from "./inspector.js";
import { layoutResponse, runSimulation, hashResponse, type Point } from "./layout.js";
import { renderUnits, TYPE_COLORS } from "./render.js";
import { validateParams, ViewState } from "./state.js";
import type {
  GammaChoice,
  SessionResponse,
  ThetaChoice,
  UnitEdge,
  UnitsResponse,
} from "./types.js";
import { DEFAULT_PARAMS, FIXTURE_NAMES } from "./types.js";

const CANVAS_WIDTH = 900;
const CANVAS_HEIGHT = 620;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: Array<Node | string> = [],
): HTMLElementTagNameMap[K] {
  const element = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) element.setAttribute(key, value);
  element.append(...children);
  return element;
}

export class ExplorerApp {
  readonly state = new ViewState();
  private positions = new Map<string, Point>();
  private overlayPositions: Map<string, Point> | null = null;
  private querySequence = 0;

  // controls
  private fixtureSelect!: HTMLSelectElement;
  private seedInput!: HTMLInputElement;
  private seedChips!: HTMLElement;
  private hInput!: HTMLInputElement;
  private kSlider!: HTMLInputElement;
  private kReadout!: HTMLElement;
  private gammaSelect!: HTMLSelectElement;
  private thetaSelect!: HTMLSelectElement;
  private vudieValue!: HTMLInputElement;
  private ludieKind!: HTMLSelectElement;
  private ludieValue!: HTMLInputElement;
  private runButton!: HTMLButtonElement;
  private expandButton!: HTMLButtonElement;
  private collapseButton!: HTMLButtonElement;
  private banner!: HTMLElement;
  private status!: HTMLElement;
  private summaryLine!: HTMLElement;
  private historyStrip!: HTMLElement;
  private inspector!: HTMLElement;
  private legend!: HTMLElement;
  private prompt!: HTMLElement;
  private svg!: SVGSVGElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ServiceClient,
  ) {
    this.build();
    this.syncControls();
  }

  // -- DOM scaffolding -------------------------------------------------------

  private build(): void {
    this.fixtureSelect = el("select", { "data-testid": "fixture-select" });
    for (const name of FIXTURE_NAMES) {
      this.fixtureSelect.append(el("option", { value: name }, [name]));
    }
    const loadButton = el("button", { "data-testid": "load-fixture" }, ["Load fixture"]);
    loadButton.addEventListener("click", () => void this.loadFixture());

    const nodesFile = el("input", { type: "file", accept: ".csv", "data-testid": "nodes-file" });
    const txFile = el("input", { type: "file", accept: ".csv", "data-testid": "transactions-file" });
    const uploadButton = el("button", { "data-testid": "upload" }, ["Upload CSV pair"]);
    uploadButton.addEventListener("click", () => {
      const nodes = nodesFile.files?.[0];
      const txs = txFile.files?.[0];
      if (!nodes || !txs) {
        this.showBanner(new Error("choose both a nodes CSV and a transactions CSV"));
        return;
      }
      void this.loadUpload(nodes, txs);
    });

    this.summaryLine = el("div", { class: "summary", "data-testid": "summary" });

    this.seedInput = el("input", {
      type: "text", placeholder: "seed node id", "data-testid": "seed-input",
    });
    const addSeed = el("button", { "data-testid": "add-seed" }, ["Add seed"]);
    addSeed.addEventListener("click", () => this.addSeed(this.seedInput.value));
    this.seedChips = el("div", { class: "chips", "data-testid": "seed-chips" });

    this.hInput = el("input", {
      type: "number", min: "0", step: "1", value: String(DEFAULT_PARAMS.h),
      "data-testid": "h-input",
    });
    this.kSlider = el("input", {
      type: "range", min: "0", max: "1", step: "0.01", value: String(DEFAULT_PARAMS.k),
      "data-testid": "k-slider",
    });
    this.kReadout = el("span", { "data-testid": "k-readout" });
    this.gammaSelect = el("select", { "data-testid": "gamma-select" });
    for (const choice of ["mean_blend", "max_blend", "min_blend"]) {
      this.gammaSelect.append(el("option", { value: choice }, [choice]));
    }
    this.thetaSelect = el("select", { "data-testid": "theta-select" });
    for (const choice of ["exponential", "reciprocal"]) {
      this.thetaSelect.append(el("option", { value: choice }, [choice]));
    }
    this.vudieValue = el("input", {
      type: "number", min: "0", max: "1", step: "0.05", value: "1",
      "data-testid": "vudie-value",
    });
    this.ludieKind = el("select", { "data-testid": "ludie-kind" });
    for (const kind of ["fraud_time_weighted", "constant"]) {
      this.ludieKind.append(el("option", { value: kind }, [kind]));
    }
    this.ludieValue = el("input", {
      type: "number", min: "0", max: "1", step: "0.05", value: "0.5",
      "data-testid": "ludie-value", disabled: "",
    });
    this.ludieKind.addEventListener("change", () => {
      this.ludieValue.disabled = this.ludieKind.value !== "constant";
      void this.steer("recompute");
    });

    this.runButton = el("button", { "data-testid": "run" }, ["Run"]);
    this.runButton.addEventListener("click", () => void this.run());

    this.expandButton = el("button", { "data-testid": "expand" }, ["Expand selected"]);
    this.expandButton.addEventListener("click", () => void this.manualExpand());
    this.collapseButton = el("button", { "data-testid": "collapse" }, ["Collapse overlay"]);
    this.collapseButton.addEventListener("click", () => this.collapseOverlay());

    this.historyStrip = el("div", { class: "history", "data-testid": "history" });
    this.inspector = el("div", { class: "inspector", "data-testid": "inspector" });
    this.legend = el("div", { class: "legend", "data-testid": "legend" });
    this.banner = el("div", { class: "banner hidden", "data-testid": "banner" });
    this.status = el("div", { class: "status", "data-testid": "status" });
    this.prompt = el("div", { class: "prompt", "data-testid": "prompt" }, [
      "Load a fixture or CSV pair, add at least one seed, then press Run.",
    ]);

    this.svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.svg.setAttribute("viewBox", `0 0 ${CANVAS_WIDTH} ${CANVAS_HEIGHT}`);
    this.svg.setAttribute("data-testid", "canvas");

    // steering: k/theta reuse the cached propagation server-side; h, gamma
    // and spec changes recompute it (progress indicator)
    this.kSlider.addEventListener("input", () => void this.steer("fast"));
    this.thetaSelect.addEventListener("change", () => void this.steer("fast"));
    this.hInput.addEventListener("change", () => void this.steer("recompute"));
    this.gammaSelect.addEventListener("change", () => void this.steer("recompute"));
    this.vudieValue.addEventListener("change", () => void this.steer("recompute"));
    this.ludieValue.addEventListener("change", () => void this.steer("recompute"));

    const panel = el("div", { class: "panel" }, [
      el("h2", {}, ["Session"]),
      el("div", { class: "row" }, [this.fixtureSelect, loadButton]),
      el("label", {}, ["nodes ", nodesFile]),
      el("label", {}, ["transactions ", txFile]),
      el("div", { class: "row" }, [uploadButton]),
      this.summaryLine,
      el("h2", {}, ["Seeds"]),
      el("div", { class: "row" }, [this.seedInput, addSeed]),
      this.seedChips,
      el("h2", {}, ["Parameters"]),
      el("label", {}, ["hops h ", this.hInput]),
      el("label", {}, ["threshold k ", this.kSlider, this.kReadout]),
      el("label", {}, ["aggregation ", this.gammaSelect]),
      el("label", {}, ["decay ", this.thetaSelect]),
      el("label", {}, ["node interest (constant) ", this.vudieValue]),
      el("label", {}, ["edge interest ", this.ludieKind, this.ludieValue]),
      el("div", { class: "row" }, [this.runButton, this.expandButton, this.collapseButton]),
      el("h2", {}, ["History"]),
      this.historyStrip,
      el("h2", {}, ["Inspector"]),
      this.inspector,
      el("h2", {}, ["Legend"]),
      this.legend,
    ]);
    const canvasWrap = el("div", { class: "canvas-wrap" });
    canvasWrap.append(this.banner, this.status, this.prompt, this.svg);
    this.root.append(panel, canvasWrap);
    this.renderLegend();
  }

  // -- control state ---------------------------------------------------------

  private syncControls(): void {
    this.kReadout.textContent = ` ${Number(this.kSlider.value).toFixed(2)}`;
    this.hInput.value = String(this.state.params.h);
    this.kSlider.value = String(this.state.params.k);
    this.gammaSelect.value = this.state.params.gamma;
    this.thetaSelect.value = this.state.params.theta;
    this.kReadout.textContent = ` ${this.state.params.k.toFixed(2)}`;
    this.runButton.disabled = !this.state.canQuery();
    this.prompt.classList.toggle("hidden", this.state.current !== null);
  }

  /** Pull panel values into state; returns problems without sending anything. */
  readParams(): string[] {
    const params = {
      h: Number(this.hInput.value),
      k: Number(this.kSlider.value),
      gamma: this.gammaSelect.value as GammaChoice,
      theta: this.thetaSelect.value as ThetaChoice,
    };
    const problems = validateParams(params);
    const vudie = Number(this.vudieValue.value);
    if (!(vudie >= 0 && vudie <= 1)) problems.push("node interest must lie in [0, 1]");
    if (this.ludieKind.value === "constant") {
      const value = Number(this.ludieValue.value);
      if (!(value >= 0 && value <= 1)) problems.push("edge interest must lie in [0, 1]");
    }
    if (problems.length === 0) this.state.params = params;
    return problems;
  }

  private specOverrides(): SpecOverrides {
    const overrides: SpecOverrides = {};
    const vudie = Number(this.vudieValue.value);
    if (vudie !== 1) overrides.vudie = { kind: "constant", value: vudie };
    if (this.ludieKind.value === "constant") {
      overrides.ludie = { kind: "constant", value: Number(this.ludieValue.value) };
    }
    return overrides;
  }

  // -- session and seeds -------------------------------------------------------

  async loadFixture(): Promise<void> {
    try {
      this.openSession(await this.client.createFixtureSession(this.fixtureSelect.value));
    } catch (error) {
      this.showBanner(error);
    }
  }

  async loadUpload(nodesCsv: File, transactionsCsv: File): Promise<void> {
    try {
      this.openSession(await this.client.createUploadSession(nodesCsv, transactionsCsv));
    } catch (error) {
      this.showBanner(error);
    }
  }

  private openSession(session: SessionResponse): void {
    this.state.openSession(session.session_id, session.summary);
    const types = Object.entries(session.summary.nodes_by_type)
      .map(([type, count]) => `${count} ${type}`)
      .join(", ");
    this.summaryLine.textContent =
      `${session.summary.nodes} nodes, ${session.summary.edges} edges ` +
      `(${types}); ${session.summary.transactions} transactions`;
    this.svg.textContent = "";
    this.renderSeeds();
    this.renderHistory();
    this.renderLegend();
    this.clearBanner();
    this.syncControls();
  }

  addSeed(raw: string): void {
    const seed = raw.trim();
    if (!seed || this.state.seeds.includes(seed)) return;
    this.state.seeds.push(seed);
    this.seedInput.value = "";
    this.renderSeeds();
    this.syncControls();
  }

  removeSeed(seed: string): void {
    this.state.seeds = this.state.seeds.filter((s) => s !== seed);
    this.renderSeeds();
    this.syncControls();
  }

  private renderSeeds(): void {
    this.seedChips.textContent = "";
    for (const seed of this.state.seeds) {
      const chip = el("button", { class: "chip", "data-seed": seed }, [`${seed} x`]);
      chip.addEventListener("click", () => this.removeSeed(seed));
      this.seedChips.append(chip);
    }
  }

  // -- querying ----------------------------------------------------------------

  async run(): Promise<void> {
    if (!this.state.sessionId) {
      this.showBanner(new Error("load a graph or fixture first"));
      return;
    }
    if (this.state.seeds.length === 0) {
      // the canvas prompt stays; no request leaves the app
      this.syncControls();
      return;
    }
    const problems = this.readParams();
    if (problems.length > 0) {
      this.showBanner(new Error(problems.join("; ")));
      return;
    }
    const sequence = ++this.querySequence;
    this.status.textContent = "computing...";
    try {
      const response = await this.client.queryGraphUnits(
        this.state.sessionId,
        this.state.seeds,
        { ...this.state.params, ...this.specOverrides() },
      );
      if (sequence !== this.querySequence) return; // superseded
      this.applyResult(response);
    } catch (error) {
      if ((error as Error).name === "AbortError") return;
      this.showBanner(error);
    } finally {
      if (sequence === this.querySequence) this.status.textContent = "";
    }
  }

  /** Parameter steering re-queries; "recompute" flags a slow propagation rebuild. */
  async steer(kind: "fast" | "recompute"): Promise<void> {
    this.kReadout.textContent = ` ${Number(this.kSlider.value).toFixed(2)}`;
    if (!this.state.sessionId || this.state.seeds.length === 0) return;
    if (kind === "recompute") this.status.textContent = "recomputing propagation...";
    await this.run();
  }

  private applyResult(response: UnitsResponse): void {
    this.state.pushResult(this.state.seeds, this.state.params, response);
    this.positions = layoutResponse(response, CANVAS_WIDTH, CANVAS_HEIGHT);
    this.overlayPositions = null;
    this.redraw();
    this.renderHistory();
    this.renderLegend();
    this.clearBanner();
    this.syncControls();
  }

  private redraw(): void {
    const entry = this.state.current;
    if (!entry) return;
    renderUnits(
      this.svg,
      entry.response,
      this.positions,
      {
        onNodeClick: (id) => this.selectNode(id),
        onEdgeClick: (edge) => this.selectEdge(edge),
      },
      this.state.overlay,
      this.overlayPositions,
    );
  }

  // -- inspector ----------------------------------------------------------------

  selectNode(nodeId: string): void {
    this.state.selected = nodeId;
    const entry = this.state.current;
    const inUnit = this.state.unitMembers().has(nodeId);
    const node =
      entry?.response.units.flatMap((u) => u.nodes).find((n) => n.id === nodeId) ??
      this.state.overlay?.nodes.find((n) => n.id === nodeId);
    if (node) this.renderInspector(nodeInspectorRows(node, inUnit));
  }

  selectEdge(edge: UnitEdge): void {
    this.renderInspector(edgeInspectorRows(edge));
  }

  private renderInspector(rows: InspectorRow[]): void {
    this.inspector.textContent = "";
    for (const row of rows) {
      const value = el("span", { class: "value" }, [row.value]);
      if (row.full !== undefined) value.setAttribute("title", row.full);
      this.inspector.append(el("div", { class: "inspector-row" }, [
        el("span", { class: "label" }, [row.label]), value,
      ]));
    }
  }

  // -- history -------------------------------------------------------------------

  private renderHistory(): void {
    this.historyStrip.textContent = "";
    this.state.history.forEach((entry, index) => {
      const active = entry === this.state.current;
      const button = el("button", {
        class: active ? "history-entry active" : "history-entry",
        "data-index": String(index),
      }, [entry.label]);
      button.addEventListener("click", () => {
        const flipped = this.state.flipTo(index);
        if (flipped) {
          this.positions = layoutResponse(flipped.response, CANVAS_WIDTH, CANVAS_HEIGHT);
          this.overlayPositions = null;
          this.redraw();
          this.renderHistory();
          this.renderLegend();
          this.syncControls();
        }
      });
      this.historyStrip.append(button);
    });
  }

  private renderLegend(): void {
    this.legend.textContent = "";
    for (const [type, color] of Object.entries(TYPE_COLORS)) {
      this.legend.append(el("span", { class: "legend-item" }, [
        el("span", { class: "swatch", style: `background:${color}` }), ` ${type} `,
      ]));
    }
    for (const unit of this.state.current?.response.units ?? []) {
      this.legend.append(el("div", { class: "legend-unit", "data-seed": unit.seed }, [
        `unit(${unit.seed}): ${unit.nodes.length} nodes, ${unit.edges.length} edges`,
      ]));
    }
  }

  // -- manual expansion -------------------------------------------------------------

  async manualExpand(): Promise<void> {
    const target = this.state.selected;
    if (!target || !this.state.sessionId || !this.state.current) return;
    try {
      const overlay = await this.client.neighborhood(this.state.sessionId, target, 1);
      this.state.overlay = overlay;
      // lay out the union so overlay nodes settle around the existing
      // canvas; unit nodes keep their current positions (pinned)
      const ids: string[] = [];
      const unitIds = new Set(this.positions.keys());
      for (const id of unitIds) ids.push(id);
      for (const node of overlay.nodes) if (!unitIds.has(node.id)) ids.push(node.id);
      const edges: Array<[string, string]> = overlay.edges.map((e) => [e.src, e.dst]);
      const merged = runSimulation(
        ids, edges, unitIds, CANVAS_WIDTH, CANVAS_HEIGHT,
        hashResponse(overlay), this.positions,
      );
      for (const [id, at] of this.positions) merged.set(id, at);
      this.overlayPositions = merged;
      this.redraw();
    } catch (error) {
      this.showBanner(error);
    }
  }

  /** Drop the overlay; the canvas returns exactly to the unit view. */
  collapseOverlay(): void {
    this.state.overlay = null;
    this.overlayPositions = null;
    this.redraw();
  }

  // -- errors -------------------------------------------------------------------------

  private showBanner(error: unknown): void {
    const message =
      error instanceof ServiceError
        ? `service error (${error.status}): ${error.message}`
        : `${(error as Error).message ?? error}`;
    this.banner.textContent = message;
    this.banner.classList.remove("hidden");
  }

  private clearBanner(): void {
    this.banner.textContent = "";
    this.banner.classList.add("hidden");
  }
}
