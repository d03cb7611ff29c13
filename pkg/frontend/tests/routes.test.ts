import { describe, expect, it } from "vitest";

import type { InstanceInfo, Solution } from "../src/api.js";
import { DEPOT_COLOR, renderRoutes, RenderError, stopLabel, vehicleColor } from "../src/routes.js";
import { fixtures } from "./helpers.js";

const instance = fixtures.instance();
const detailed = fixtures.solution035().solution;

function sweepSolution(alpha: number): Solution {
  const point = fixtures.sweep().points.find((p) => p.alpha === alpha);
  if (point === undefined) {
    throw new Error(`no sweep point at ${alpha}`);
  }
  return point.solution;
}

describe("renderRoutes", () => {
  it("draws one colored polyline per vehicle plus a distinct depot marker", () => {
    const view = renderRoutes(detailed, instance);
    expect(view.layout).toBe("geographic");
    expect(view.polylines).toHaveLength(instance.vehicle_count);
    const colors = view.polylines.map((p) => p.color);
    expect(new Set(colors).size).toBe(colors.length);
    expect(colors).not.toContain(DEPOT_COLOR);
    expect(view.depot.color).toBe(DEPOT_COLOR);
    expect(colors[0]).toBe("#d62728");
  });

  it("labels stops in visit order across vehicles", () => {
    const view = renderRoutes(detailed, instance);
    const expectedIds = [...detailed.routes]
      .sort((a, b) => a.vehicle_id - b.vehicle_id)
      .flatMap((r) => r.stops);
    expect(view.stops.map((m) => m.id)).toEqual(expectedIds);
    expect(view.stops.map((m) => m.label)).toEqual(expectedIds.map((_, i) => stopLabel(i)));
    expect(view.stops.slice(0, 3).map((m) => m.label)).toEqual(["A", "B", "C"]);
  });

  it("anchors every polyline at the depot", () => {
    const view = renderRoutes(detailed, instance);
    for (const poly of view.polylines) {
      expect(poly.points[0]).toEqual({ x: view.depot.x, y: view.depot.y });
      expect(poly.points[poly.points.length - 1]).toEqual({ x: view.depot.x, y: view.depot.y });
    }
  });

  it("shows per-leg logistics and risk costs in tooltips when the API provides legs", () => {
    const view = renderRoutes(detailed, instance);
    const apiRoutes = [...detailed.routes].sort((a, b) => a.vehicle_id - b.vehicle_id);
    view.polylines.forEach((poly, i) => {
      const apiLegs = apiRoutes[i]?.legs;
      expect(apiLegs).toBeDefined();
      expect(poly.legs.map((l) => [l.from, l.to])).toEqual(apiLegs?.map((l) => [l.from, l.to]));
      poly.legs.forEach((leg, j) => {
        expect(leg.logisticsCost).toBe(apiLegs?.[j]?.logistics_cost);
        expect(leg.riskCost).toBe(apiLegs?.[j]?.risk_cost);
        expect(leg.tooltip).toContain("c=");
        expect(leg.tooltip).toContain("r=");
      });
    });
  });

  it("derives leg endpoints from the stops when the API omits legs", () => {
    const solution = sweepSolution(0.35);
    const view = renderRoutes(solution, instance);
    const first = view.polylines[0];
    const stops = [...solution.routes].sort((a, b) => a.vehicle_id - b.vehicle_id)[0]?.stops ?? [];
    expect(first?.legs.map((l) => l.from)).toEqual([instance.depot, ...stops]);
    expect(first?.legs.map((l) => l.to)).toEqual([...stops, instance.depot]);
    expect(first?.legs.every((l) => l.logisticsCost === null && l.riskCost === null)).toBe(true);
  });

  it("renders a single-customer solution as one out-and-back leg", () => {
    const solo: Solution = {
      alpha: 0.5,
      engine: "exact",
      logistics_total: 10,
      risk_total: 2,
      objective: 6,
      routes: [{ vehicle_id: 1, stops: ["piracicaba"], load: 4, logistics_cost: 10, risk_cost: 2 }],
    };
    const view = renderRoutes(solo, instance);
    expect(view.polylines).toHaveLength(1);
    expect(view.polylines[0]?.points).toHaveLength(3);
    expect(view.polylines[0]?.legs.map((l) => [l.from, l.to])).toEqual([
      ["limeira", "piracicaba"],
      ["piracicaba", "limeira"],
    ]);
  });

  it("changes geometry across a route-set transition and not inside a plateau", () => {
    const stopsAt = (alpha: number): string[][] =>
      renderRoutes(sweepSolution(alpha), instance).polylines.map((p) => p.legs.map((l) => l.to));
    // (0.15, 0.2) is a recorded transition; (0.3, 0.35) is inside a plateau
    expect(stopsAt(0.15)).not.toEqual(stopsAt(0.2));
    expect(stopsAt(0.3)).toEqual(stopsAt(0.35));
  });

  it("falls back to a schematic circular layout when coordinates are missing", () => {
    const bare: InstanceInfo = {
      ...instance,
      nodes: instance.nodes.map((n) => ({ ...n, lat: null, lon: null })),
    };
    const view = renderRoutes(detailed, bare);
    expect(view.layout).toBe("schematic");
    expect(view.depot.x).toBe(50);
    expect(view.depot.y).toBe(50);
    const radii = view.stops.map((m) => Math.hypot(m.x - 50, m.y - 50));
    for (const radius of radii) {
      expect(radius).toBeCloseTo(radii[0] ?? 0, 9);
    }
    const distinct = new Set(view.stops.map((m) => `${m.x.toFixed(6)},${m.y.toFixed(6)}`));
    expect(distinct.size).toBe(view.stops.length);
  });

  it("rejects solutions that reference unknown nodes", () => {
    const broken: Solution = {
      ...detailed,
      routes: [{ vehicle_id: 1, stops: ["atlantis"], load: 1, logistics_cost: 0, risk_cost: 0 }],
    };
    expect(() => renderRoutes(broken, instance)).toThrow(RenderError);
  });
});

describe("vehicleColor", () => {
  it("stays pairwise distinct well past the fixed palette", () => {
    const colors = Array.from({ length: 24 }, (_, i) => vehicleColor(i));
    expect(new Set(colors).size).toBe(colors.length);
    expect(colors).not.toContain(DEPOT_COLOR);
  });
});

describe("stopLabel", () => {
  it("continues past Z like spreadsheet columns", () => {
    expect(stopLabel(0)).toBe("A");
    expect(stopLabel(25)).toBe("Z");
    expect(stopLabel(26)).toBe("AA");
    expect(stopLabel(27)).toBe("AB");
  });
});
