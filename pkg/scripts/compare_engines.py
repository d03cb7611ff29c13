"""Compare the exact and heuristic engines across the alpha grid.

Runs both engines on the configured instance, prints per-alpha
objectives with the heuristic's optimality gap, and totals the wall
time of each engine.  With --restarts the heuristic also runs
multi-start and a second gap column shows the improvement.  A negative
gap would be a bug.
"""

from __future__ import annotations

import argparse
import time

from riskroute.config import BUNDLED_CONFIG, build_pipeline, load_config
from riskroute.solver import HeuristicParams, solve_heuristic
from riskroute.sweep import alpha_sweep, format_alpha


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--config", default=str(BUNDLED_CONFIG), help="run config TOML (default: bundled)"
    )
    parser.add_argument("--restarts", type=int, default=0, help="heuristic multi-start count")
    parser.add_argument("--seed", type=int, default=1, help="multi-start jitter seed")
    args = parser.parse_args()

    pipeline = build_pipeline(load_config(args.config))
    instance = pipeline.instance

    t0 = time.perf_counter()
    exact = alpha_sweep(instance, engine="exact")
    exact_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    heur = alpha_sweep(instance, engine="heuristic")
    heur_s = time.perf_counter() - t0

    multi_gaps: list[float] = []
    if args.restarts > 0:
        params = HeuristicParams(restarts=args.restarts, seed=args.seed)
        for pe in exact.points:
            zm = solve_heuristic(instance, pe.alpha, params).objective
            ze = pe.solution.objective
            multi_gaps.append(0.0 if ze == 0 else 100.0 * (zm - ze) / ze)

    header = f"{'alpha':>6} {'exact z':>12} {'heuristic z':>12} {'gap %':>8}"
    if multi_gaps:
        header += f" {'multi gap %':>12}"
    print(header)
    worst = 0.0
    for i, (pe, ph) in enumerate(zip(exact.points, heur.points)):
        ze, zh = pe.solution.objective, ph.solution.objective
        gap = 0.0 if ze == 0 else 100.0 * (zh - ze) / ze
        worst = max(worst, gap)
        line = f"{format_alpha(pe.alpha):>6} {ze:>12.2f} {zh:>12.2f} {gap:>8.3f}"
        if multi_gaps:
            line += f" {multi_gaps[i]:>12.3f}"
        print(line)

    n = len(instance.customers)
    print()
    print(f"instance: {n} customers, {instance.vehicle_count} vehicles, capacity {instance.capacity:g}")
    summary = f"exact sweep: {exact_s:.3f} s   heuristic sweep: {heur_s:.3f} s   worst gap: {worst:.3f} %"
    if multi_gaps:
        summary += f"   worst multi gap: {max(multi_gaps):.3f} %"
    print(summary)


if __name__ == "__main__":
    main()
