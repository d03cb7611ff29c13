"""Read-only HTTP API over precomputed routing artifacts.

The app loads the full pipeline once at startup, reuses sweep artifacts
from the output directory when their instance fingerprint still
matches, and serves immutable JSON snapshots.  Nothing here mutates
state; recomputation belongs to the CLI.
"""

from __future__ import annotations

import json
import sys

from fastapi import FastAPI, Query
from fastapi.middleware.cors import CORSMiddleware

from .config import Pipeline, RunConfig, build_pipeline
from .sweep import alpha_sweep, export_report, instance_fingerprint


def load_or_compute_sweep(pipeline: Pipeline) -> dict:
    """Return plotdata for the configured sweep, recomputing stale artifacts.

    A plotdata file whose fingerprint no longer matches the instance is
    replaced on disk after a warning.
    """
    config = pipeline.config
    plot_file = config.output_dir / "plotdata.json"
    fingerprint = instance_fingerprint(pipeline.instance)
    if plot_file.is_file():
        data = json.loads(plot_file.read_text())
        if data.get("fingerprint") == fingerprint and data.get("engine") == config.engine:
            return data
        print(
            f"warning: stale sweep artifacts in {config.output_dir} "
            f"(fingerprint mismatch), recomputing",
            file=sys.stderr,
        )
    result = alpha_sweep(
        pipeline.instance,
        alphas=config.alphas,
        engine=config.engine,
        cache_dir=config.output_dir,
    )
    export_report(result, config.output_dir)
    return json.loads(plot_file.read_text())


def _instance_payload(pipeline: Pipeline) -> dict:
    instance = pipeline.instance
    return {
        "depot": instance.depot,
        "vehicle_count": instance.vehicle_count,
        "capacity": instance.capacity,
        "nodes": [
            {
                "id": node.id,
                "name": node.name,
                "lat": node.lat,
                "lon": node.lon,
                "demand": instance.demands[node.id],
            }
            for node in instance.nodes
        ],
    }


def _arcs_payload(pipeline: Pipeline) -> dict:
    arcs = pipeline.network.arcs
    return {
        "arcs": [
            {
                "from": key[0],
                "to": key[1],
                "length_km": arc.total_length,
                "tolls": arc.tolls,
                "logistics_cost": arc.logistics_cost,
                "exposure": arc.exposure,
                "paccident": arc.accident_probability,
                "risk_cost": arc.risk_cost,
            }
            for key, arc in sorted(arcs.items())
        ]
    }


def _solution_payload(pipeline: Pipeline, point: dict) -> dict:
    """Solution dict for one sweep point, routes expanded with per-leg costs."""
    network = pipeline.network
    depot = pipeline.instance.depot
    solution = dict(point["solution"])
    routes = []
    for route in solution["routes"]:
        seq = [depot, *route["stops"], depot]
        legs = []
        for a, b in zip(seq, seq[1:]):
            arc = network.arc(a, b)
            legs.append(
                {
                    "from": a,
                    "to": b,
                    "logistics_cost": arc.logistics_cost,
                    "risk_cost": arc.risk_cost,
                }
            )
        routes.append({**route, "legs": legs})
    solution["routes"] = routes
    return {"alpha": point["alpha"], "wall_ms": point["wall_ms"], "solution": solution}


def create_app(config: RunConfig) -> FastAPI:
    """Build the service with all payloads precomputed and frozen."""
    pipeline = build_pipeline(config)
    plotdata = load_or_compute_sweep(pipeline)

    instance_payload = _instance_payload(pipeline)
    arcs_payload = _arcs_payload(pipeline)
    solution_payloads = [_solution_payload(pipeline, p) for p in plotdata["points"]]
    meta = {
        "fingerprint": plotdata["fingerprint"],
        "engine": plotdata["engine"],
        "seed": config.seed,
        "iterations": config.iterations,
        "alphas": [p["alpha"] for p in plotdata["points"]],
        "grid": plotdata["alphas"],
    }

    app = FastAPI(title="riskroute", version="0.1.0")
    # read-only precomputed data; let dashboards on other origins read it
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["GET"])

    @app.get("/instance")
    def get_instance() -> dict:
        return instance_payload

    @app.get("/arcs")
    def get_arcs() -> dict:
        return arcs_payload

    @app.get("/sweep")
    def get_sweep() -> dict:
        return plotdata

    @app.get("/solution")
    def get_solution(alpha: float = Query(..., ge=0.0, le=1.0)) -> dict:
        best = min(
            solution_payloads, key=lambda payload: (abs(payload["alpha"] - alpha), payload["alpha"])
        )
        return {"requested_alpha": alpha, **best}

    @app.get("/meta")
    def get_meta() -> dict:
        return meta

    return app
