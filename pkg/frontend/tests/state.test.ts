import { describe, expect, it } from "vitest";

import { snapToGrid, StateError, ViewState } from "../src/state.js";
import { fixtures } from "./helpers.js";

describe("snapToGrid", () => {
  const grid = fixtures.sweep().points.map((p) => p.alpha);

  it("returns grid values unchanged", () => {
    for (const alpha of grid) {
      expect(snapToGrid(grid, alpha)).toBe(alpha);
    }
  });

  it("snaps off-grid values to the nearest point", () => {
    expect(snapToGrid(grid, 0.26)).toBe(0.25);
    expect(snapToGrid(grid, 0.999)).toBe(1.0);
    expect(snapToGrid(grid, -5)).toBe(0.0);
  });

  it("breaks distance ties toward the lower alpha, like the service", () => {
    expect(snapToGrid(grid, 0.125)).toBe(0.1);
  });

  it("rejects an empty grid", () => {
    expect(() => snapToGrid([], 0.5)).toThrow(StateError);
  });
});

describe("ViewState", () => {
  it("maps every selection to exactly one sweep point", () => {
    const sweep = fixtures.sweep();
    const state = new ViewState(sweep);
    for (const point of sweep.points) {
      state.selectAlpha(point.alpha);
      expect(state.selectedAlpha).toBe(point.alpha);
      expect(state.selectedPoint()).toBe(point);
      expect(sweep.points.filter((p) => p.alpha === state.selectedAlpha)).toHaveLength(1);
    }
  });

  it("snaps raw slider values on selection", () => {
    const state = new ViewState(fixtures.sweep());
    expect(state.selectAlpha(0.37)).toBe(0.35);
    expect(state.selectedPoint().alpha).toBe(0.35);
  });

  it("rejects pinning the selected point", () => {
    const state = new ViewState(fixtures.sweep());
    state.selectAlpha(0.5);
    expect(() => state.pinAlpha(0.5)).toThrow(StateError);
    expect(state.pinnedAlpha).toBeNull();
  });

  it("snaps the pin to the grid and exposes its sweep point", () => {
    const state = new ViewState(fixtures.sweep());
    state.selectAlpha(0.5);
    expect(state.pinAlpha(0.19)).toBe(0.2);
    expect(state.pinnedPoint()?.alpha).toBe(0.2);
  });

  it("clears the pin when the selection lands on it", () => {
    const state = new ViewState(fixtures.sweep());
    state.selectAlpha(0.5);
    state.pinAlpha(0.2);
    state.selectAlpha(0.2);
    expect(state.pinnedAlpha).toBeNull();
    expect(state.selectedAlpha).toBe(0.2);
  });

  it("clears the pin on request", () => {
    const state = new ViewState(fixtures.sweep());
    state.pinAlpha(0.8);
    state.clearPin();
    expect(state.pinnedPoint()).toBeNull();
  });

  it("rejects an empty sweep", () => {
    const empty = { ...fixtures.sweep(), points: [], transitions: [] };
    expect(() => new ViewState(empty)).toThrow(StateError);
  });
});
