import { describe, expect, it } from "vitest";

import { renderTradeoffCurve } from "../src/tradeoff.js";
import { fixtures } from "./helpers.js";

describe("renderTradeoffCurve", () => {
  it("plots three series with one point per sweep alpha", () => {
    const sweep = fixtures.sweep();
    const view = renderTradeoffCurve(sweep);
    expect(view.kind).toBe("chart");
    if (view.kind !== "chart") {
      return;
    }
    expect(view.series.map((s) => s.name)).toEqual(["logistics", "risk", "objective"]);
    for (const series of view.series) {
      expect(series.points).toHaveLength(sweep.points.length);
      expect(series.points.map((p) => p.alpha)).toEqual(sweep.points.map((p) => p.alpha));
    }
  });

  it("passes every plotted value through from the sweep payload", () => {
    const sweep = fixtures.sweep();
    const view = renderTradeoffCurve(sweep);
    if (view.kind !== "chart") {
      throw new Error("expected a chart");
    }
    const byName = new Map(view.series.map((s) => [s.name, s.points]));
    sweep.points.forEach((point, i) => {
      expect(byName.get("logistics")?.[i]?.value).toBe(point.solution.logistics_total);
      expect(byName.get("risk")?.[i]?.value).toBe(point.solution.risk_total);
      expect(byName.get("objective")?.[i]?.value).toBe(point.solution.objective);
    });
  });

  it("highlights the selected alpha on all series", () => {
    const view = renderTradeoffCurve(fixtures.sweep(), 0.15);
    if (view.kind !== "chart") {
      throw new Error("expected a chart");
    }
    for (const series of view.series) {
      const highlighted = series.points.filter((p) => p.highlighted);
      expect(highlighted).toHaveLength(1);
      expect(highlighted[0]?.alpha).toBe(0.15);
    }
  });

  it("highlights nothing when no alpha is selected", () => {
    const view = renderTradeoffCurve(fixtures.sweep());
    if (view.kind !== "chart") {
      throw new Error("expected a chart");
    }
    for (const series of view.series) {
      expect(series.points.some((p) => p.highlighted)).toBe(false);
    }
  });

  it("marks the transition intervals as bands, verbatim", () => {
    const sweep = fixtures.sweep();
    const view = renderTradeoffCurve(sweep);
    if (view.kind !== "chart") {
      throw new Error("expected a chart");
    }
    expect(view.bands.map((b) => [b.lo, b.hi])).toEqual(sweep.transitions);
    expect(view.bands.length).toBeGreaterThan(0);
  });

  it("renders an explicit empty state for an empty sweep", () => {
    const empty = { ...fixtures.sweep(), points: [], transitions: [] };
    const view = renderTradeoffCurve(empty);
    expect(view.kind).toBe("empty");
    if (view.kind === "empty") {
      expect(view.message.length).toBeGreaterThan(0);
    }
  });
});
