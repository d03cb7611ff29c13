"""Run configuration and pipeline assembly.

A run is described by one TOML file: dataset paths, cost parameters,
Monte Carlo settings, the alpha grid, and service binding.  Relative
paths resolve against the config file's directory.  ``build_pipeline``
turns a validated config into a fully enriched network and instance,
which is everything the CLI and service need.
"""

from __future__ import annotations

import dataclasses
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .domain import (
    ArcNetwork,
    DataError,
    Instance,
    TrafficStats,
    load_instance,
    load_network,
    load_traffic_stats,
    with_logistics_costs,
)
from .mcsim import (
    DEFAULT_ITERATIONS,
    DEFAULT_TABLE,
    LossBracketTable,
    RiskEstimate,
    annotate_risk_costs,
    load_bracket_table,
)
from .riskprob import annotate_probabilities

ENV_CONFIG = "RISKROUTE_CONFIG"

BUNDLED_DATA_DIR = Path(__file__).parent / "data"
BUNDLED_CONFIG = BUNDLED_DATA_DIR / "config.toml"


@dataclass(frozen=True)
class RunConfig:
    """Everything one run depends on, resolved to absolute paths."""

    roads_file: Path
    arcs_file: Path
    traffic_file: Path
    instance_file: Path
    brackets_file: Path | None
    fuel_price: float
    consumption: float
    iterations: int = DEFAULT_ITERATIONS
    seed: int = 42
    deductible_rate: float | None = None
    open_bracket_cap: float | None = None
    alphas: tuple[float, ...] | None = None
    engine: str = "exact"
    output_dir: Path = Path("out")
    host: str = "127.0.0.1"
    port: int = 8000

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise DataError(f"iterations must be positive, got {self.iterations}")
        if self.seed < 1:
            raise DataError(f"seed must be positive, got {self.seed}")
        if self.fuel_price < 0:
            raise DataError(f"fuel_price must be non-negative, got {self.fuel_price}")
        if self.consumption <= 0:
            raise DataError(f"consumption must be positive, got {self.consumption}")
        if self.engine not in ("exact", "heuristic"):
            raise DataError(f"engine must be 'exact' or 'heuristic', got {self.engine!r}")
        if self.alphas is not None:
            for alpha in self.alphas:
                if not 0.0 <= alpha <= 1.0:
                    raise DataError(f"alpha {alpha} outside [0, 1]")
        if not 0 < self.port < 65536:
            raise DataError(f"port {self.port} outside 1..65535")

    def validate_paths(self) -> None:
        """All referenced input files must exist."""
        named = [
            ("roads", self.roads_file),
            ("arcs", self.arcs_file),
            ("traffic", self.traffic_file),
            ("instance", self.instance_file),
        ]
        if self.brackets_file is not None:
            named.append(("brackets", self.brackets_file))
        for label, path in named:
            if not path.is_file():
                raise DataError(f"{label} file not found: {path}")


def load_config(path: str | Path | None = None) -> RunConfig:
    """Read a TOML run config; fall back to $RISKROUTE_CONFIG when no path given."""
    if path is None:
        path = os.environ.get(ENV_CONFIG)
        if not path:
            raise DataError(f"no config path given and {ENV_CONFIG} is unset")
    path = Path(path)
    if not path.is_file():
        raise DataError(f"config file not found: {path}")
    with path.open("rb") as fh:
        try:
            raw = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise DataError(f"{path}: invalid TOML: {exc}") from exc

    base = path.parent

    def resolve(section: dict, key: str, required: bool = True) -> Path | None:
        value = section.get(key)
        if value is None:
            if required:
                raise DataError(f"{path}: missing [data] {key}")
            return None
        return (base / value).resolve() if not Path(value).is_absolute() else Path(value)

    data = raw.get("data", {})
    costs = raw.get("costs", {})
    risk = raw.get("risk", {})
    sweep = raw.get("sweep", {})
    output = raw.get("output", {})
    service = raw.get("service", {})

    for key in ("fuel_price", "consumption"):
        if key not in costs:
            raise DataError(f"{path}: missing [costs] {key}")

    alphas = sweep.get("alphas")
    out_dir = Path(output.get("dir", "out"))
    if not out_dir.is_absolute():
        out_dir = (base / out_dir).resolve()

    config = RunConfig(
        roads_file=resolve(data, "roads"),
        arcs_file=resolve(data, "arcs"),
        traffic_file=resolve(data, "traffic"),
        instance_file=resolve(data, "instance"),
        brackets_file=resolve(data, "brackets", required=False),
        fuel_price=float(costs["fuel_price"]),
        consumption=float(costs["consumption"]),
        iterations=int(risk.get("iterations", DEFAULT_ITERATIONS)),
        seed=int(risk.get("seed", 42)),
        deductible_rate=risk.get("deductible_rate"),
        open_bracket_cap=risk.get("open_bracket_cap"),
        alphas=None if alphas is None else tuple(float(a) for a in alphas),
        engine=sweep.get("engine", "exact"),
        output_dir=out_dir,
        host=service.get("host", "127.0.0.1"),
        port=int(service.get("port", 8000)),
    )
    config.validate_paths()
    return config


@dataclass(frozen=True)
class Pipeline:
    """Fully enriched run state: inputs loaded, all per-arc values attached."""

    config: RunConfig
    network: ArcNetwork
    instance: Instance
    stats: TrafficStats
    table: LossBracketTable
    estimates: dict[tuple[str, str], RiskEstimate] = field(repr=False, default_factory=dict)


def load_bracket_config(config: RunConfig) -> LossBracketTable:
    if config.brackets_file is None:
        table = DEFAULT_TABLE
        if config.deductible_rate is not None or config.open_bracket_cap is not None:
            table = dataclasses.replace(
                table,
                deductible_rate=config.deductible_rate or table.deductible_rate,
                open_bracket_cap=config.open_bracket_cap or table.open_bracket_cap,
            )
        return table
    return load_bracket_table(
        config.brackets_file,
        deductible_rate=config.deductible_rate,
        open_bracket_cap=config.open_bracket_cap,
    )


def build_pipeline(config: RunConfig) -> Pipeline:
    """Load every input and run the full per-arc enrichment chain."""
    network = load_network(config.roads_file, config.arcs_file)
    network = with_logistics_costs(network, config.fuel_price, config.consumption)
    stats = load_traffic_stats(config.traffic_file)
    network = annotate_probabilities(network, stats)
    table = load_bracket_config(config)
    network, estimates = annotate_risk_costs(
        network, table, iterations=config.iterations, seed=config.seed
    )
    instance = load_instance(config.instance_file, network)
    return Pipeline(
        config=config,
        network=network,
        instance=instance,
        stats=stats,
        table=table,
        estimates=estimates,
    )
