// Browser entry: fetch the precomputed sweep once, then steer alpha
// with a slider. Selection and pinning are pure view-state changes;
// every request is a cache-only read against the service.

import { ApiClient, type InstanceInfo, type Solution, type SweepPayload } from "./api.js";
import { compareAlphas } from "./compare.js";
import { DEPOT_COLOR, renderRoutes, type RoutesView } from "./routes.js";
import { renderTradeoffCurve, type ChartView } from "./tradeoff.js";
import { ViewState } from "./state.js";

const esc = (value: string): string =>
  value.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");

const fmt = (value: number): string => value.toFixed(2);

function chartSvg(view: ChartView, onAlphaScale: (alpha: number) => number): string {
  const all = view.series.flatMap((s) => s.points.map((p) => p.value));
  const vMax = Math.max(...all);
  const vMin = Math.min(...all, 0);
  const x = onAlphaScale;
  const y = (value: number): number => 8 + (1 - (value - vMin) / (vMax - vMin || 1)) * 80;
  const colors: Record<string, string> = { logistics: "#8a5a00", risk: "#9c1d1d", objective: "#1d3f9c" };
  const bands = view.bands
    .map(
      (band) =>
        `<rect x="${x(band.lo)}" y="8" width="${x(band.hi) - x(band.lo)}" height="80" fill="#d9b84a" opacity="0.25"><title>route set changes in (${band.lo}, ${band.hi})</title></rect>`,
    )
    .join("");
  const lines = view.series
    .map((series) => {
      const pts = series.points.map((p) => `${x(p.alpha)},${y(p.value)}`).join(" ");
      const color = colors[series.name] ?? "#444";
      const dots = series.points
        .map(
          (p) =>
            `<circle cx="${x(p.alpha)}" cy="${y(p.value)}" r="${p.highlighted ? 2.4 : 1.1}" fill="${color}"${p.highlighted ? ' stroke="#000" stroke-width="0.6"' : ""}><title>${series.name} at alpha=${p.alpha}: ${fmt(p.value)}</title></circle>`,
        )
        .join("");
      return `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="0.8"/>${dots}`;
    })
    .join("");
  const legend = view.series
    .map((s, i) => {
      const color = colors[s.name] ?? "#444";
      return `<circle cx="${6 + i * 26}" cy="97" r="1.6" fill="${color}"/><text x="${9 + i * 26}" y="98.4" font-size="3.6" fill="#333">${s.name}</text>`;
    })
    .join("");
  return `<svg viewBox="0 0 100 102" xmlns="http://www.w3.org/2000/svg">${bands}${lines}${legend}</svg>`;
}

function routesSvg(view: RoutesView): string {
  const lines = view.polylines
    .map((poly) => {
      const segments = poly.legs
        .map((leg, i) => {
          const a = poly.points[i];
          const b = poly.points[i + 1];
          if (a === undefined || b === undefined) {
            return "";
          }
          return `<line x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" stroke="${poly.color}" stroke-width="0.7"><title>${esc(leg.tooltip)}</title></line>`;
        })
        .join("");
      return segments;
    })
    .join("");
  const stops = view.stops
    .map(
      (m) =>
        `<circle cx="${m.x}" cy="${m.y}" r="2.2" fill="${m.color}"/><text x="${m.x}" y="${m.y + 1.2}" font-size="3.2" text-anchor="middle" fill="#fff">${esc(m.label)}</text><title>${esc(m.id)}</title>`,
    )
    .join("");
  const depot = `<rect x="${view.depot.x - 2.4}" y="${view.depot.y - 2.4}" width="4.8" height="4.8" fill="${DEPOT_COLOR}"><title>${esc(view.depot.label)} (depot)</title></rect>`;
  return `<svg viewBox="0 0 100 100" xmlns="http://www.w3.org/2000/svg">${lines}${stops}${depot}</svg>`;
}

function solutionTable(solution: Solution): string {
  const rows = solution.routes
    .map(
      (route) =>
        `<tr><td>vehicle ${route.vehicle_id}</td><td>${route.stops.map(esc).join(" → ")}</td><td>${fmt(route.load)}</td><td>${fmt(route.logistics_cost)}</td><td>${fmt(route.risk_cost)}</td></tr>`,
    )
    .join("");
  return `<table><thead><tr><th>route</th><th>stops</th><th>load</th><th>logistics</th><th>risk</th></tr></thead><tbody>${rows}</tbody></table>
    <p>logistics ${fmt(solution.logistics_total)} · risk ${fmt(solution.risk_total)} · z ${fmt(solution.objective)} · engine ${esc(solution.engine)}</p>`;
}

function comparePanel(state: ViewState, instance: InstanceInfo): string {
  const pinned = state.pinnedAlpha;
  if (pinned === null) {
    return `<p class="muted">Pin a second alpha to compare route plans.</p>`;
  }
  const cmp = compareAlphas(state.sweep, instance.depot, pinned, state.selectedAlpha);
  const legList = (legs: typeof cmp.legsAdded): string =>
    legs.length === 0 ? "none" : legs.map((l) => `${esc(l.from)}→${esc(l.to)}`).join(", ");
  return `<p>alpha ${cmp.alphaA} → ${cmp.alphaB}:
      Δlogistics ${fmt(cmp.deltaLogistics)} · Δrisk ${fmt(cmp.deltaRisk)} · Δz ${fmt(cmp.deltaObjective)}</p>
    <p>legs added: ${legList(cmp.legsAdded)}</p>
    <p>legs removed: ${legList(cmp.legsRemoved)}</p>`;
}

async function boot(): Promise<void> {
  const app = document.getElementById("app");
  if (app === null) {
    return;
  }
  const base = new URLSearchParams(window.location.search).get("api") ?? "";
  const api = new ApiClient(base);
  let instance: InstanceInfo;
  let sweep: SweepPayload;
  try {
    [instance, sweep] = await Promise.all([api.instance(), api.sweep()]);
  } catch (error) {
    app.innerHTML = `<p class="error">failed to reach the routing service: ${esc(String(error))}</p>`;
    return;
  }

  const state = new ViewState(sweep, 0.5);
  const grid = state.grid();
  const detailed = new Map<number, Solution>();

  app.innerHTML = `
    <header>
      <h1>riskroute dashboard</h1>
      <p class="muted">engine ${esc(sweep.engine)} · fingerprint ${esc(sweep.fingerprint.slice(0, 12))} · depot ${esc(instance.depot)} · ${instance.vehicle_count} vehicles, capacity ${instance.capacity}</p>
    </header>
    <section>
      <label>safety weight α = <output id="alpha-out"></output></label>
      <input id="alpha" type="range" min="0" max="${grid.length - 1}" step="1"/>
      <label>compare with <select id="pin"></select></label>
    </section>
    <section class="split">
      <figure><figcaption>cost curves over α</figcaption><div id="chart"></div></figure>
      <figure><figcaption>routes at the selected α</figcaption><div id="map"></div></figure>
    </section>
    <section id="solution"></section>
    <section id="compare"></section>`;

  const slider = document.getElementById("alpha") as HTMLInputElement;
  const out = document.getElementById("alpha-out") as HTMLOutputElement;
  const pinSelect = document.getElementById("pin") as HTMLSelectElement;
  const chart = document.getElementById("chart") as HTMLDivElement;
  const map = document.getElementById("map") as HTMLDivElement;
  const solutionBox = document.getElementById("solution") as HTMLDivElement;
  const compareBox = document.getElementById("compare") as HTMLDivElement;

  const alphaScale = (alpha: number): number => 4 + alpha * 92;

  const render = (): void => {
    const point = state.selectedPoint();
    out.value = String(point.alpha);
    slider.value = String(grid.indexOf(point.alpha));
    // the pin list never offers the selected point itself
    pinSelect.innerHTML = [
      `<option value="">none</option>`,
      ...grid
        .filter((alpha) => alpha !== point.alpha)
        .map((alpha) => `<option value="${alpha}"${alpha === state.pinnedAlpha ? " selected" : ""}>${alpha}</option>`),
    ].join("");
    const view = renderTradeoffCurve(sweep, point.alpha);
    chart.innerHTML = view.kind === "chart" ? chartSvg(view, alphaScale) : `<p class="muted">${esc(view.message)}</p>`;
    const solution = detailed.get(point.alpha) ?? point.solution;
    map.innerHTML = routesSvg(renderRoutes(solution, instance));
    solutionBox.innerHTML = solutionTable(solution);
    compareBox.innerHTML = comparePanel(state, instance);
  };

  const fetchLegs = (alpha: number): void => {
    if (detailed.has(alpha)) {
      return;
    }
    api
      .solution(alpha)
      .then((payload) => {
        detailed.set(payload.alpha, payload.solution);
        if (state.selectedAlpha === payload.alpha) {
          render();
        }
      })
      .catch(() => undefined);
  };

  slider.addEventListener("input", () => {
    const alpha = grid[Number(slider.value)];
    if (alpha !== undefined) {
      state.selectAlpha(alpha);
      fetchLegs(alpha);
      render();
    }
  });
  pinSelect.addEventListener("change", () => {
    if (pinSelect.value === "") {
      state.clearPin();
    } else {
      state.pinAlpha(Number(pinSelect.value));
    }
    render();
  });

  fetchLegs(state.selectedAlpha);
  render();
}

void boot();
