import { describe, expect, it } from "vitest";

import { validateParams, ViewState } from "../src/state.js";
import { DEFAULT_PARAMS, type UnitsResponse } from "../src/types.js";
import { FIXTURES } from "./helpers.js";

const unitsA = FIXTURES.unitsK070 as UnitsResponse;
const unitsB = FIXTURES.unitsK000 as UnitsResponse;

describe("validateParams", () => {
  it("accepts the defaults", () => {
    expect(validateParams(DEFAULT_PARAMS)).toEqual([]);
  });

  it("rejects out-of-range values before any request could be built", () => {
    expect(validateParams({ ...DEFAULT_PARAMS, k: 1.2 })).not.toHaveLength(0);
    expect(validateParams({ ...DEFAULT_PARAMS, k: -0.1 })).not.toHaveLength(0);
    expect(validateParams({ ...DEFAULT_PARAMS, h: -1 })).not.toHaveLength(0);
    expect(validateParams({ ...DEFAULT_PARAMS, h: 2.5 })).not.toHaveLength(0);
    expect(
      validateParams({ ...DEFAULT_PARAMS, gamma: "sum_blend" as never }),
    ).not.toHaveLength(0);
    expect(
      validateParams({ ...DEFAULT_PARAMS, theta: "linear" as never }),
    ).not.toHaveLength(0);
  });
});

describe("ViewState", () => {
  it("cannot query without a session or seeds", () => {
    const state = new ViewState();
    expect(state.canQuery()).toBe(false);
    state.openSession("sid", { nodes: 1, edges: 0, transactions: 0, nodes_by_type: {} });
    expect(state.canQuery()).toBe(false);
    state.seeds.push("C1");
    expect(state.canQuery()).toBe(true);
    state.params = { ...DEFAULT_PARAMS, k: 7 };
    expect(state.canQuery()).toBe(false);
  });

  it("keeps a bounded history and flips back to earlier results", () => {
    const state = new ViewState();
    state.openSession("sid", { nodes: 5, edges: 4, transactions: 4, nodes_by_type: {} });
    state.seeds = ["C1"];
    state.pushResult(["C1"], { ...DEFAULT_PARAMS, k: 0.7 }, unitsA);
    state.pushResult(["C1"], { ...DEFAULT_PARAMS, k: 0.0 }, unitsB);
    expect(state.history).toHaveLength(2);
    expect(state.current?.response).toBe(unitsB);

    const flipped = state.flipTo(0);
    expect(flipped?.response).toBe(unitsA);
    expect(state.params.k).toBe(0.7);
    expect(state.current?.response).toBe(unitsA);

    for (let i = 0; i < 20; i++) {
      state.pushResult(["C1"], DEFAULT_PARAMS, unitsA);
    }
    expect(state.history.length).toBeLessThanOrEqual(8);
  });

  it("derives unit membership from the current response only", () => {
    const state = new ViewState();
    state.openSession("sid", { nodes: 5, edges: 4, transactions: 4, nodes_by_type: {} });
    state.pushResult(["C1"], DEFAULT_PARAMS, unitsA);
    expect(state.unitMembers()).toEqual(new Set(["C1", "M1", "C2"]));
    expect(state.nodeCount()).toBe(3);
  });

  it("clears the overlay whenever a new result lands", () => {
    const state = new ViewState();
    state.openSession("sid", { nodes: 5, edges: 4, transactions: 4, nodes_by_type: {} });
    state.pushResult(["C1"], DEFAULT_PARAMS, unitsA);
    state.overlay = FIXTURES.neighborhoodM1 as never;
    state.pushResult(["C1"], DEFAULT_PARAMS, unitsB);
    expect(state.overlay).toBeNull();
  });
});
