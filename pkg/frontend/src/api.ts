// Typed client for the routing service HTTP API. The dashboard does no
// optimization or risk math of its own: every number it shows comes out
// of one of these five endpoints.

export interface NodeInfo {
  id: string;
  name: string;
  lat: number | null;
  lon: number | null;
  demand: number;
}

export interface InstanceInfo {
  depot: string;
  vehicle_count: number;
  capacity: number;
  nodes: NodeInfo[];
}

export interface ArcInfo {
  from: string;
  to: string;
  length_km: number;
  tolls: number;
  logistics_cost: number;
  exposure: number;
  paccident: number;
  risk_cost: number;
}

export interface ArcsPayload {
  arcs: ArcInfo[];
}

export interface Leg {
  from: string;
  to: string;
  logistics_cost: number;
  risk_cost: number;
}

export interface RouteInfo {
  vehicle_id: number;
  stops: string[];
  load: number;
  logistics_cost: number;
  risk_cost: number;
  legs?: Leg[];
}

export interface Solution {
  alpha: number;
  engine: string;
  logistics_total: number;
  risk_total: number;
  objective: number;
  routes: RouteInfo[];
}

export interface SweepPoint {
  alpha: number;
  wall_ms: number;
  solution: Solution;
}

export interface SweepPayload {
  fingerprint: string;
  engine: string;
  alphas: string[];
  points: SweepPoint[];
  transitions: Array<[number, number]>;
}

export interface SolutionPayload {
  requested_alpha: number;
  alpha: number;
  wall_ms: number;
  solution: Solution;
}

export interface MetaPayload {
  fingerprint: string;
  engine: string;
  seed: number;
  iterations: number;
  alphas: number[];
  grid: string[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly url: string,
  ) {
    super(`GET ${url} failed with status ${status}`);
    this.name = "ApiError";
  }
}

export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<FetchResponse>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  instance(): Promise<InstanceInfo> {
    return this.get<InstanceInfo>("/instance");
  }

  arcs(): Promise<ArcsPayload> {
    return this.get<ArcsPayload>("/arcs");
  }

  sweep(): Promise<SweepPayload> {
    return this.get<SweepPayload>("/sweep");
  }

  meta(): Promise<MetaPayload> {
    return this.get<MetaPayload>("/meta");
  }

  solution(alpha: number): Promise<SolutionPayload> {
    return this.get<SolutionPayload>(`/solution?alpha=${alpha}`);
  }

  private async get<T>(path: string): Promise<T> {
    const url = `${this.baseUrl}${path}`;
    const response = await this.fetchFn(url);
    if (!response.ok) {
      throw new ApiError(response.status, url);
    }
    return (await response.json()) as T;
  }
}
