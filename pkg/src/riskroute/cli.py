"""Command-line entry points.

Thin shell over the library: each subcommand loads a run config,
applies flag overrides, and delegates to module operations.  Exit
codes: 0 success, 1 runtime failure (bad data, infeasible instance),
2 argument errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .config import ENV_CONFIG, RunConfig, build_pipeline, load_config
from .domain import DataError
from .mcsim import write_risk_report
from .riskprob import ProbabilityError, write_probabilities_report
from .solver import SolverError, serialize_solution
from .sweep import alpha_sweep, export_report, format_alpha


def cmd_risk(config: RunConfig) -> list[Path]:
    """Write the per-arc probability and risk-cost reports."""
    pipeline = build_pipeline(config)
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    prob_file = out / "probabilities.csv"
    risk_file = out / "risk.csv"
    write_probabilities_report(pipeline.network, prob_file)
    write_risk_report(
        pipeline.network, pipeline.estimates, config.iterations, config.seed, risk_file
    )
    return [prob_file, risk_file]


def cmd_solve(config: RunConfig, alpha: float) -> Path:
    """Solve at one alpha and write the solution file.

    Runs through the sweep cache, so a solve at a previously swept alpha
    replays the recorded solution.
    """
    pipeline = build_pipeline(config)
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    result = alpha_sweep(
        pipeline.instance, alphas=[alpha], engine=config.engine, cache_dir=out
    )
    point = result.points[0]
    path = out / f"routes_{format_alpha(alpha)}.txt"
    path.write_text(serialize_solution(point.solution, point.wall_ms))
    return path


def cmd_sweep(config: RunConfig) -> list[Path]:
    """Sweep the alpha grid and write all report artifacts."""
    pipeline = build_pipeline(config)
    result = alpha_sweep(
        pipeline.instance,
        alphas=config.alphas,
        engine=config.engine,
        cache_dir=config.output_dir,
    )
    return export_report(result, config.output_dir)


def cmd_serve(config: RunConfig) -> None:
    """Run the read-only HTTP API until interrupted."""
    import uvicorn

    from .service import create_app

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskroute",
        description="Risk-aware vehicle routing: reports, solutions, sweeps, service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help=f"run config TOML (default: ${ENV_CONFIG})")
        p.add_argument("--seed", type=int, help="Monte Carlo seed override")
        p.add_argument("--iterations", type=int, help="Monte Carlo iteration override")
        p.add_argument(
            "--engine", choices=["exact", "heuristic"], help="solver engine override"
        )
        p.add_argument("--out", help="output directory override")

    p_risk = sub.add_parser("risk", help="write per-arc probability and risk-cost reports")
    add_common(p_risk)

    p_solve = sub.add_parser("solve", help="solve the instance at one alpha")
    add_common(p_solve)
    p_solve.add_argument("--alpha", type=float, required=True, help="safety weight in [0, 1]")

    p_sweep = sub.add_parser("sweep", help="solve across the alpha grid and export reports")
    add_common(p_sweep)

    p_serve = sub.add_parser("serve", help="serve precomputed artifacts over HTTP")
    add_common(p_serve)

    return parser


def _apply_overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    overrides: dict = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.iterations is not None:
        overrides["iterations"] = args.iterations
    if args.engine is not None:
        overrides["engine"] = args.engine
    if args.out is not None:
        overrides["output_dir"] = Path(args.out).resolve()
    return dataclasses.replace(config, **overrides) if overrides else config


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "solve" and not 0.0 <= args.alpha <= 1.0:
        parser.error(f"--alpha must be in [0, 1], got {args.alpha}")

    try:
        config = _apply_overrides(load_config(args.config), args)
        if args.command == "risk":
            for path in cmd_risk(config):
                print(path)
        elif args.command == "solve":
            print(cmd_solve(config, args.alpha))
        elif args.command == "sweep":
            for path in cmd_sweep(config):
                print(path)
        elif args.command == "serve":
            cmd_serve(config)
    except (DataError, ProbabilityError, SolverError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
