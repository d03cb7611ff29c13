// Recorded API fixtures: responses captured verbatim from the running
// service so contract tests pin what the dashboard must display.

import { readFileSync } from "node:fs";

import type {
  ArcsPayload,
  InstanceInfo,
  MetaPayload,
  SolutionPayload,
  SweepPayload,
} from "../src/api.js";

function loadFixture<T>(name: string): T {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as T;
}

export const fixtures = {
  instance: (): InstanceInfo => loadFixture<InstanceInfo>("instance.json"),
  arcs: (): ArcsPayload => loadFixture<ArcsPayload>("arcs.json"),
  sweep: (): SweepPayload => loadFixture<SweepPayload>("sweep.json"),
  meta: (): MetaPayload => loadFixture<MetaPayload>("meta.json"),
  solution035: (): SolutionPayload => loadFixture<SolutionPayload>("solution_0.35.json"),
};
