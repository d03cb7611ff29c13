"""Safety-weight sweeps over the routing objective.

Solves the same instance across a grid of alpha values, records the
logistics/risk trade-off, and finds where the optimal route set changes.
Solutions are cached per (instance fingerprint, alpha, engine) so a
rerun over unchanged inputs replays recorded results, wall times
included, and reproduces its report files byte for byte.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .domain import Instance, _fmt
from .solver import Route, Solution, SolverError, serialize_solution, solve_exact, solve_heuristic

ENGINES: dict[str, Callable[[Instance, float], Solution]] = {
    "exact": solve_exact,
    "heuristic": solve_heuristic,
}

CACHE_FILENAME = "solutions_cache.json"


@dataclass(frozen=True)
class SweepPoint:
    alpha: float
    solution: Solution
    wall_ms: int
    from_cache: bool = False


@dataclass(frozen=True)
class SweepResult:
    points: tuple[SweepPoint, ...]
    engine: str
    fingerprint: str

    def point_at(self, alpha: float) -> SweepPoint:
        for point in self.points:
            if format_alpha(point.alpha) == format_alpha(alpha):
                return point
        raise KeyError(f"alpha {alpha} not in sweep grid")


def default_alpha_grid() -> list[float]:
    """0.00 to 1.00 in steps of 0.05 (21 points)."""
    return [i / 20 for i in range(21)]


def format_alpha(alpha: float) -> str:
    """Stable short token for filenames and keys: 0.0, 0.05, 0.125."""
    s = f"{alpha:.4f}".rstrip("0")
    if s.endswith("."):
        s += "0"
    return s


def instance_fingerprint(instance: Instance) -> str:
    """Digest of everything a solution depends on, enriched costs included."""
    buf = io.StringIO()
    buf.write(f"depot={instance.depot};K={instance.vehicle_count};q={_fmt(instance.capacity)}\n")
    for node in instance.nodes:
        buf.write(f"node={node.id};demand={_fmt(instance.demands[node.id])}\n")
    for key in sorted(instance.arcs.arcs):
        arc = instance.arcs.arcs[key]
        c = "" if arc.logistics_cost is None else _fmt(arc.logistics_cost)
        r = "" if arc.risk_cost is None else _fmt(arc.risk_cost)
        buf.write(
            f"arc={key[0]}>{key[1]};len={_fmt(arc.total_length)};"
            f"tolls={_fmt(arc.tolls)};c={c};r={r}\n"
        )
    return hashlib.sha256(buf.getvalue().encode()).hexdigest()


def solution_to_dict(solution: Solution) -> dict:
    return {
        "alpha": solution.alpha,
        "engine": solution.engine,
        "objective": solution.objective,
        "logistics_total": solution.logistics_total,
        "risk_total": solution.risk_total,
        "routes": [
            {
                "vehicle_id": route.vehicle_id,
                "stops": list(route.stops),
                "load": route.load,
                "logistics_cost": route.logistics_cost,
                "risk_cost": route.risk_cost,
            }
            for route in solution.routes
        ],
    }


def solution_from_dict(data: dict) -> Solution:
    return Solution(
        routes=tuple(
            Route(
                vehicle_id=r["vehicle_id"],
                stops=tuple(r["stops"]),
                load=r["load"],
                logistics_cost=r["logistics_cost"],
                risk_cost=r["risk_cost"],
            )
            for r in data["routes"]
        ),
        alpha=data["alpha"],
        logistics_total=data["logistics_total"],
        risk_total=data["risk_total"],
        objective=data["objective"],
        engine=data["engine"],
    )


class _SolutionCache:
    """JSON-backed store of solved points, keyed by fingerprint:alpha:engine."""

    def __init__(self, cache_dir: Path | None):
        self.path = None if cache_dir is None else Path(cache_dir) / CACHE_FILENAME
        self.entries: dict[str, dict] = {}
        self.dirty = False
        if self.path is not None and self.path.exists():
            self.entries = json.loads(self.path.read_text())

    @staticmethod
    def key(fingerprint: str, alpha: float, engine: str) -> str:
        return f"{fingerprint}:{format_alpha(alpha)}:{engine}"

    def get(self, key: str) -> tuple[Solution, int] | None:
        entry = self.entries.get(key)
        if entry is None:
            return None
        return solution_from_dict(entry["solution"]), entry["wall_ms"]

    def put(self, key: str, solution: Solution, wall_ms: int) -> None:
        self.entries[key] = {"solution": solution_to_dict(solution), "wall_ms": wall_ms}
        self.dirty = True

    def flush(self) -> None:
        if self.path is not None and self.dirty:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text(json.dumps(self.entries, indent=2, sort_keys=True) + "\n")
            self.dirty = False


def alpha_sweep(
    instance: Instance,
    alphas: Sequence[float] | None = None,
    engine: str = "exact",
    cache_dir: Path | str | None = None,
) -> SweepResult:
    """Solve the instance at every alpha on the grid.

    Grid values must lie in [0, 1]; the default grid has 21 points.
    With a cache directory, previously solved points are replayed
    instead of recomputed.
    """
    if engine not in ENGINES:
        raise SolverError(f"unknown engine {engine!r} (choose from {sorted(ENGINES)})")
    solve = ENGINES[engine]
    grid = sorted(default_alpha_grid() if alphas is None else alphas)
    if not grid:
        raise SolverError("alpha grid is empty")
    for alpha in grid:
        if not 0.0 <= alpha <= 1.0:
            raise SolverError(f"alpha {alpha} outside [0, 1]")
    tokens = [format_alpha(alpha) for alpha in grid]
    if len(set(tokens)) != len(tokens):
        dupes = sorted({t for t in tokens if tokens.count(t) > 1})
        raise SolverError(f"alpha grid repeats values: {', '.join(dupes)}")

    fingerprint = instance_fingerprint(instance)
    cache = _SolutionCache(None if cache_dir is None else Path(cache_dir))
    points: list[SweepPoint] = []
    for alpha in grid:
        key = cache.key(fingerprint, alpha, engine)
        hit = cache.get(key)
        if hit is not None:
            solution, wall_ms = hit
            points.append(SweepPoint(alpha=alpha, solution=solution, wall_ms=wall_ms, from_cache=True))
            continue
        t0 = time.perf_counter_ns()
        solution = solve(instance, alpha)
        wall_ms = int((time.perf_counter_ns() - t0) // 1_000_000)
        cache.put(key, solution, wall_ms)
        points.append(SweepPoint(alpha=alpha, solution=solution, wall_ms=wall_ms))
    cache.flush()
    return SweepResult(points=tuple(points), engine=engine, fingerprint=fingerprint)


def canonical_route_set(solution: Solution) -> tuple[tuple[str, ...], ...]:
    """Comparable form of a solution's routes (stop order preserved)."""
    return tuple(route.stops for route in solution.routes)


def transition_points(result: SweepResult) -> list[tuple[float, float]]:
    """Consecutive grid alphas between which the optimal route set changes."""
    out: list[tuple[float, float]] = []
    for a, b in zip(result.points, result.points[1:]):
        if canonical_route_set(a.solution) != canonical_route_set(b.solution):
            out.append((a.alpha, b.alpha))
    return out


def export_report(result: SweepResult, out_dir: Path | str) -> list[Path]:
    """Write sweep.csv, per-alpha route files, and plotdata.json.

    Every file is a pure function of the sweep result, so replaying a
    cached sweep rewrites identical bytes.
    """
    if not str(out_dir):
        raise OSError("sweep report: output directory path is empty")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    sweep_csv = out / "sweep.csv"
    with sweep_csv.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["alpha", "logistics", "risk", "objective", "wall_ms"])
        for point in result.points:
            sol = point.solution
            writer.writerow(
                [
                    format_alpha(point.alpha),
                    f"{sol.logistics_total:.2f}",
                    f"{sol.risk_total:.2f}",
                    f"{sol.objective:.2f}",
                    point.wall_ms,
                ]
            )
    written.append(sweep_csv)

    for point in result.points:
        route_file = out / f"routes_{format_alpha(point.alpha)}.txt"
        route_file.write_text(serialize_solution(point.solution, point.wall_ms))
        written.append(route_file)

    plotdata = {
        "fingerprint": result.fingerprint,
        "engine": result.engine,
        "alphas": [format_alpha(p.alpha) for p in result.points],
        "points": [
            {
                "alpha": point.alpha,
                "wall_ms": point.wall_ms,
                "solution": solution_to_dict(point.solution),
            }
            for point in result.points
        ],
        "transitions": [[a, b] for a, b in transition_points(result)],
    }
    plot_file = out / "plotdata.json"
    plot_file.write_text(json.dumps(plotdata, indent=2, sort_keys=True) + "\n")
    written.append(plot_file)
    return written
