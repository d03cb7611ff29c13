"""Run-config tests: TOML loading, validation, overrides, and pipeline assembly."""

from __future__ import annotations

import dataclasses

import pytest

from riskroute.config import (
    BUNDLED_CONFIG,
    ENV_CONFIG,
    build_pipeline,
    load_bracket_config,
    load_config,
)
from riskroute.domain import DataError
from riskroute.mcsim import DEFAULT_TABLE
from riskroute.riskprob import general_probability


@pytest.fixture(scope="module")
def bundled_config():
    return load_config(BUNDLED_CONFIG)


def test_bundled_config_loads_with_resolved_paths(bundled_config) -> None:
    for path in (
        bundled_config.roads_file,
        bundled_config.arcs_file,
        bundled_config.traffic_file,
        bundled_config.instance_file,
        bundled_config.brackets_file,
    ):
        assert path.is_absolute()
        assert path.is_file()
    assert bundled_config.engine == "exact"
    assert bundled_config.seed == 42
    assert bundled_config.iterations == 200_000
    assert bundled_config.output_dir.is_absolute()


@pytest.mark.parametrize(
    ("field", "value", "message"),
    [
        ("iterations", 0, "iterations"),
        ("seed", 0, "seed"),
        ("fuel_price", -1.0, "fuel_price"),
        ("consumption", 0.0, "consumption"),
        ("engine", "annealing", "engine"),
        ("alphas", (0.5, 1.5), "outside"),
        ("port", 0, "port"),
        ("port", 70000, "port"),
    ],
)
def test_invalid_settings_rejected(bundled_config, field, value, message) -> None:
    with pytest.raises(DataError, match=message):
        dataclasses.replace(bundled_config, **{field: value})


def test_missing_config_file_reported() -> None:
    with pytest.raises(DataError, match="not found"):
        load_config("/nonexistent/run.toml")


def test_invalid_toml_reported(tmp_path) -> None:
    bad = tmp_path / "run.toml"
    bad.write_text("[data\nroads = ")
    with pytest.raises(DataError, match="invalid TOML"):
        load_config(bad)


def test_missing_required_keys_reported(tmp_path) -> None:
    partial = tmp_path / "run.toml"
    partial.write_text('[data]\nroads = "roads.csv"\n')
    with pytest.raises(DataError, match=r"\[costs\] fuel_price"):
        load_config(partial)
    partial.write_text("[costs]\nfuel_price = 6.0\nconsumption = 2.5\n")
    with pytest.raises(DataError, match=r"\[data\] roads"):
        load_config(partial)


def test_dangling_data_path_reported(tmp_path, bundled_config) -> None:
    cfg = tmp_path / "run.toml"
    cfg.write_text(
        f"""
[data]
roads = "{bundled_config.roads_file}"
arcs = "{bundled_config.arcs_file}"
traffic = "missing_traffic.toml"
instance = "{bundled_config.instance_file}"

[costs]
fuel_price = 6.0
consumption = 2.5
"""
    )
    with pytest.raises(DataError, match="traffic file not found.*missing_traffic"):
        load_config(cfg)


def test_env_var_supplies_the_config_path(monkeypatch) -> None:
    monkeypatch.delenv(ENV_CONFIG, raising=False)
    with pytest.raises(DataError, match=ENV_CONFIG):
        load_config(None)
    monkeypatch.setenv(ENV_CONFIG, str(BUNDLED_CONFIG))
    assert load_config(None) == load_config(BUNDLED_CONFIG)


def test_relative_paths_resolve_against_the_config_directory(bundled_config) -> None:
    assert bundled_config.roads_file.parent == BUNDLED_CONFIG.parent
    assert bundled_config.output_dir.parent == BUNDLED_CONFIG.parent


def test_bracket_policy_overrides_apply(bundled_config) -> None:
    table = load_bracket_config(bundled_config)
    assert table.deductible_rate == DEFAULT_TABLE.deductible_rate
    assert table.open_bracket_cap == DEFAULT_TABLE.open_bracket_cap
    tweaked = dataclasses.replace(
        bundled_config, deductible_rate=0.02, open_bracket_cap=500_000.0
    )
    table = load_bracket_config(tweaked)
    assert table.deductible_rate == 0.02
    assert table.open_bracket_cap == 500_000.0
    no_file = dataclasses.replace(tweaked, brackets_file=None)
    table = load_bracket_config(no_file)
    assert table.deductible_rate == 0.02
    assert table.open_bracket_cap == 500_000.0


def test_pipeline_is_fully_enriched(bundled_pipeline) -> None:
    network = bundled_pipeline.network
    for key, arc in network.arcs.items():
        assert arc.logistics_cost is not None
        assert arc.exposure is not None
        assert arc.accident_probability is not None
        assert arc.risk_cost is not None
        assert key in bundled_pipeline.estimates
    assert bundled_pipeline.instance.depot == "limeira"


def test_general_probability_is_one_shared_scaling_factor(bundled_pipeline) -> None:
    p_general = general_probability(bundled_pipeline.stats)
    for arc in bundled_pipeline.network.arcs.values():
        assert arc.accident_probability == pytest.approx(
            p_general * arc.exposure, rel=1e-12
        )
