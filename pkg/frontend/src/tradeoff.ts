// Trade-off curve view model: logistics, risk, and total cost as
// functions of alpha, with the selected point highlighted and the
// route-set transition intervals marked as bands.

import type { SweepPayload } from "./api.js";

export type SeriesName = "logistics" | "risk" | "objective";

export interface SeriesPoint {
  alpha: number;
  value: number;
  highlighted: boolean;
}

export interface Series {
  name: SeriesName;
  points: SeriesPoint[];
}

export interface TransitionBand {
  lo: number;
  hi: number;
}

export interface ChartView {
  kind: "chart";
  series: Series[];
  bands: TransitionBand[];
}

export interface EmptyView {
  kind: "empty";
  message: string;
}

export type TradeoffView = ChartView | EmptyView;

export function renderTradeoffCurve(
  sweep: SweepPayload,
  selectedAlpha: number | null = null,
): TradeoffView {
  if (sweep.points.length === 0) {
    return { kind: "empty", message: "no sweep points to plot" };
  }
  const series = (name: SeriesName, pick: (p: (typeof sweep.points)[number]) => number): Series => ({
    name,
    points: sweep.points.map((point) => ({
      alpha: point.alpha,
      value: pick(point),
      highlighted: point.alpha === selectedAlpha,
    })),
  });
  return {
    kind: "chart",
    series: [
      series("logistics", (p) => p.solution.logistics_total),
      series("risk", (p) => p.solution.risk_total),
      series("objective", (p) => p.solution.objective),
    ],
    bands: sweep.transitions.map(([lo, hi]) => ({ lo, hi })),
  };
}
