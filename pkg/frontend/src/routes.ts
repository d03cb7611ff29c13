// Route map view model: one color per vehicle, a distinct depot marker,
// and stop markers labeled in visit order. Positions live in a 0..100
// viewbox; node coordinates project straight-line, and instances
// without coordinates fall back to a schematic circular layout.

import type { InstanceInfo, NodeInfo, Solution } from "./api.js";

export const DEPOT_COLOR = "#1f77b4";

const VEHICLE_PALETTE = [
  "#d62728",
  "#2ca02c",
  "#ff7f0e",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#7f7f7f",
  "#bcbd22",
];

// Truck 1 is red; past the palette, golden-angle hues stay distinct.
export function vehicleColor(index: number): string {
  const fixed = VEHICLE_PALETTE[index];
  if (fixed !== undefined) {
    return fixed;
  }
  return `hsl(${Math.round((index * 137.508) % 360)}, 65%, 45%)`;
}

export class RenderError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "RenderError";
  }
}

export interface Point {
  x: number;
  y: number;
}

export interface Marker extends Point {
  id: string;
  label: string;
  color: string;
}

export interface LegView {
  from: string;
  to: string;
  logisticsCost: number | null;
  riskCost: number | null;
  tooltip: string;
}

export interface RoutePolyline {
  vehicleId: number;
  color: string;
  points: Point[];
  legs: LegView[];
}

export interface RoutesView {
  layout: "geographic" | "schematic";
  depot: Marker;
  stops: Marker[];
  polylines: RoutePolyline[];
}

const PAD = 6;
const SPAN = 100 - 2 * PAD;

function hasCoordinates(node: NodeInfo): boolean {
  return (
    typeof node.lat === "number" &&
    typeof node.lon === "number" &&
    Number.isFinite(node.lat) &&
    Number.isFinite(node.lon)
  );
}

// Column-style labels: A..Z, then AA, AB, ...
export function stopLabel(index: number): string {
  let label = "";
  let i = index;
  while (i >= 0) {
    label = String.fromCharCode(65 + (i % 26)) + label;
    i = Math.floor(i / 26) - 1;
  }
  return label;
}

function geographicPositions(nodes: NodeInfo[]): Map<string, Point> {
  const lats = nodes.map((n) => n.lat as number);
  const lons = nodes.map((n) => n.lon as number);
  const latMin = Math.min(...lats);
  const latMax = Math.max(...lats);
  const lonMin = Math.min(...lons);
  const lonMax = Math.max(...lons);
  const place = (value: number, min: number, max: number): number =>
    max === min ? 50 : PAD + ((value - min) / (max - min)) * SPAN;
  const out = new Map<string, Point>();
  for (const node of nodes) {
    out.set(node.id, {
      x: place(node.lon as number, lonMin, lonMax),
      // north up: larger latitudes sit higher, i.e. at smaller y
      y: place(latMax - (node.lat as number) + latMin, latMin, latMax),
    });
  }
  return out;
}

function schematicPositions(depotId: string, visitOrder: string[]): Map<string, Point> {
  const out = new Map<string, Point>([[depotId, { x: 50, y: 50 }]]);
  const radius = SPAN / 2;
  visitOrder.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / visitOrder.length - Math.PI / 2;
    out.set(id, {
      x: 50 + radius * Math.cos(angle),
      y: 50 + radius * Math.sin(angle),
    });
  });
  return out;
}

function legViews(solution: Solution, depotId: string, routeIndex: number): LegView[] {
  const route = solution.routes[routeIndex];
  if (route === undefined) {
    throw new RenderError(`no route at index ${routeIndex}`);
  }
  if (route.legs !== undefined) {
    return route.legs.map((leg) => ({
      from: leg.from,
      to: leg.to,
      logisticsCost: leg.logistics_cost,
      riskCost: leg.risk_cost,
      tooltip: `${leg.from} -> ${leg.to} (c=${leg.logistics_cost.toFixed(2)}, r=${leg.risk_cost.toFixed(2)})`,
    }));
  }
  const walk = [depotId, ...route.stops, depotId];
  const legs: LegView[] = [];
  for (let i = 0; i + 1 < walk.length; i++) {
    const from = walk[i] as string;
    const to = walk[i + 1] as string;
    legs.push({ from, to, logisticsCost: null, riskCost: null, tooltip: `${from} -> ${to}` });
  }
  return legs;
}

export function renderRoutes(solution: Solution, instance: InstanceInfo): RoutesView {
  const nodesById = new Map(instance.nodes.map((n) => [n.id, n]));
  const depotNode = nodesById.get(instance.depot);
  if (depotNode === undefined) {
    throw new RenderError(`depot ${instance.depot} missing from the instance nodes`);
  }
  const routes = [...solution.routes].sort((a, b) => a.vehicle_id - b.vehicle_id);
  const visitOrder: string[] = [];
  for (const route of routes) {
    for (const stop of route.stops) {
      if (!nodesById.has(stop)) {
        throw new RenderError(`stop ${stop} missing from the instance nodes`);
      }
      visitOrder.push(stop);
    }
  }

  const visited = [depotNode, ...visitOrder.map((id) => nodesById.get(id) as NodeInfo)];
  const geographic = visited.every(hasCoordinates);
  const positions = geographic
    ? geographicPositions(visited)
    : schematicPositions(instance.depot, visitOrder);
  const at = (id: string): Point => positions.get(id) as Point;

  const stops: Marker[] = [];
  const polylines: RoutePolyline[] = [];
  let stopIndex = 0;
  routes.forEach((route, routeIndex) => {
    const color = vehicleColor(routeIndex);
    for (const stop of route.stops) {
      stops.push({ id: stop, label: stopLabel(stopIndex), color, ...at(stop) });
      stopIndex += 1;
    }
    const walk = [instance.depot, ...route.stops, instance.depot];
    polylines.push({
      vehicleId: route.vehicle_id,
      color,
      points: walk.map(at),
      legs: legViews({ ...solution, routes }, instance.depot, routeIndex),
    });
  });

  return {
    layout: geographic ? "geographic" : "schematic",
    depot: { id: instance.depot, label: depotNode.name, color: DEPOT_COLOR, ...at(instance.depot) },
    stops,
    polylines,
  };
}
