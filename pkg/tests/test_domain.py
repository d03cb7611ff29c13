"""Data model, ingestion, canonical serialization, and logistics costs."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riskroute.domain import (
    ROAD_TYPES,
    Arc,
    DataError,
    Instance,
    Node,
    RoadCategory,
    RoadSegment,
    TrafficStats,
    compute_logistics_cost,
    load_instance,
    load_network,
    load_traffic_stats,
    serialize_network,
    with_logistics_costs,
)

CB = ROAD_TYPES[RoadCategory.CENTRAL_BARRIER]


def seg(road_id: str = "R1", flow: float = 100.0, length: float = 10.0) -> RoadSegment:
    return RoadSegment(road_id=road_id, road_type=CB, heavy_vehicle_flow=flow, length_on_arc=length)


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------

def test_small_network_structure(small_files):
    net = load_network(small_files / "roads.csv", small_files / "arcs.csv")
    assert len(net.road_flows) == 5
    ab = net.arc("a", "b")
    assert len(ab.segments) == 2
    assert [s.road_id for s in ab.segments] == ["R1", "R4"]
    assert ab.total_length == pytest.approx(20.0)
    assert ab.tolls == 2.5  # tolls come from the first segment row


def test_reverse_directions_are_mirrored(small_files):
    net = load_network(small_files / "roads.csv", small_files / "arcs.csv")
    # 7 segment rows describe 6 arcs; mirroring doubles them.
    assert len(net.arcs) == 12
    ab, ba = net.arc("a", "b"), net.arc("b", "a")
    assert ba.segments == ab.segments
    assert ba.tolls == ab.tolls
    assert ba.total_length == ab.total_length


def test_directed_override_wins(tmp_path):
    (tmp_path / "roads.csv").write_text(
        "road_id,road_type,heavy_vehicle_flow\nR1,central_barrier,100\n"
    )
    (tmp_path / "arcs.csv").write_text(
        "from,to,segment_road_id,segment_length_km,tolls_money\n"
        "a,b,R1,10.0,5.0\n"
        "b,a,R1,12.0,0.0\n"
    )
    net = load_network(tmp_path / "roads.csv", tmp_path / "arcs.csv")
    assert net.arc("a", "b").total_length == 10.0
    assert net.arc("b", "a").total_length == 12.0
    assert net.arc("b", "a").tolls == 0.0


def test_unknown_road_id_names_id_and_row(small_files):
    text = (small_files / "arcs.csv").read_text()
    (small_files / "arcs.csv").write_text(text + "b,d,SP999,9.0,0.0\n")
    with pytest.raises(DataError, match=r"row 9.*SP999"):
        load_network(small_files / "roads.csv", small_files / "arcs.csv")


def test_missing_file_names_path(tmp_path):
    with pytest.raises(DataError, match="nothere.csv"):
        load_network(tmp_path / "nothere.csv", tmp_path / "alsonothere.csv")


def test_bad_header_rejected(tmp_path):
    (tmp_path / "roads.csv").write_text("id,type,flow\nR1,central_barrier,10\n")
    (tmp_path / "arcs.csv").write_text("from,to,segment_road_id,segment_length_km,tolls_money\n")
    with pytest.raises(DataError, match="expected header"):
        load_network(tmp_path / "roads.csv", tmp_path / "arcs.csv")


def test_bundled_dataset_has_twelve_roads(bundled_pipeline):
    assert len(bundled_pipeline.network.road_flows) == 12


def test_bundled_instance_is_nine_customers_three_vehicles(bundled_pipeline):
    instance = bundled_pipeline.instance
    assert len(instance.customers) == 9
    assert instance.vehicle_count == 3
    # Demands force all three vehicles into service.
    assert instance.total_demand > (instance.vehicle_count - 1) * instance.capacity


# ---------------------------------------------------------------------------
# canonical round trip
# ---------------------------------------------------------------------------

def test_round_trip_small(small_files):
    net = load_network(small_files / "roads.csv", small_files / "arcs.csv")
    roads1, arcs1 = serialize_network(net)
    (small_files / "r2.csv").write_text(roads1)
    (small_files / "a2.csv").write_text(arcs1)
    net2 = load_network(small_files / "r2.csv", small_files / "a2.csv")
    assert serialize_network(net2) == (roads1, arcs1)


def test_bundled_files_are_canonical(bundled_pipeline, tmp_path):
    from riskroute.config import BUNDLED_DATA_DIR

    net = load_network(BUNDLED_DATA_DIR / "roads.csv", BUNDLED_DATA_DIR / "arcs.csv")
    roads, arcs = serialize_network(net)
    assert roads == (BUNDLED_DATA_DIR / "roads.csv").read_text()
    assert arcs == (BUNDLED_DATA_DIR / "arcs.csv").read_text()


# ---------------------------------------------------------------------------
# arc construction invariants
# ---------------------------------------------------------------------------

@given(
    lengths=st.lists(st.floats(0.1, 500.0, allow_nan=False), min_size=1, max_size=5),
)
def test_segment_sum_matches_total(lengths):
    segments = tuple(seg(f"R{i}", length=l) for i, l in enumerate(lengths))
    total = sum(l for l in lengths)
    arc = Arc(from_node="a", to_node="b", segments=segments, total_length=total)
    assert arc.total_length == total


def test_segment_sum_mismatch_rejected():
    with pytest.raises(DataError, match="segment lengths"):
        Arc(from_node="a", to_node="b", segments=(seg(length=10.0),), total_length=11.0)


def test_segment_sum_within_relative_tolerance():
    total = 10.0
    arc = Arc(
        from_node="a",
        to_node="b",
        segments=(seg(length=total * (1 + 5e-7)),),
        total_length=total,
    )
    assert arc.total_length == total


def test_probability_outside_unit_interval_rejected():
    with pytest.raises(DataError, match="probability"):
        Arc(
            from_node="a",
            to_node="b",
            segments=(seg(),),
            total_length=10.0,
            accident_probability=1.5,
        )


# ---------------------------------------------------------------------------
# logistics cost
# ---------------------------------------------------------------------------

def _bare_arc(length: float, tolls: float = 0.0) -> Arc:
    if length == 0:
        return Arc(from_node="a", to_node="b", segments=(), total_length=0.0, tolls=tolls)
    return Arc(from_node="a", to_node="b", segments=(seg(length=length),), total_length=length, tolls=tolls)


def test_logistics_zero_length_zero_tolls():
    assert compute_logistics_cost(_bare_arc(0.0), 6.0, 2.5, 0.0) == 0.0


def test_logistics_hand_arithmetic():
    assert compute_logistics_cost(_bare_arc(100.0), 6.0, 2.5, 30.0) == pytest.approx(270.0)


def test_logistics_tolls_only():
    assert compute_logistics_cost(_bare_arc(0.0), 6.0, 2.5, 12.5) == 12.5


def test_logistics_rejects_bad_inputs():
    arc = _bare_arc(10.0)
    with pytest.raises(ValueError, match="consumption"):
        compute_logistics_cost(arc, 6.0, 0.0, 0.0)
    with pytest.raises(ValueError, match="fuel"):
        compute_logistics_cost(arc, -1.0, 2.5, 0.0)
    with pytest.raises(ValueError, match="tolls"):
        compute_logistics_cost(arc, 6.0, 2.5, -1.0)


@given(
    length=st.floats(0.1, 1000.0),
    tolls=st.floats(0.0, 500.0),
    fuel=st.floats(0.0, 20.0),
    consumption=st.floats(0.5, 10.0),
    lam=st.floats(0.1, 10.0),
)
@settings(max_examples=200)
def test_logistics_linear_in_length_and_tolls(length, tolls, fuel, consumption, lam):
    base = compute_logistics_cost(_bare_arc(length), fuel, consumption, 0.0)
    scaled = compute_logistics_cost(_bare_arc(length * lam), fuel, consumption, 0.0)
    assert scaled == pytest.approx(lam * base, rel=1e-9)
    with_tolls = compute_logistics_cost(_bare_arc(length), fuel, consumption, tolls)
    assert with_tolls == pytest.approx(base + tolls, rel=1e-9, abs=1e-12)


def test_with_logistics_costs_fills_every_arc(small_files):
    net = load_network(small_files / "roads.csv", small_files / "arcs.csv")
    net = with_logistics_costs(net, 6.0, 2.5)
    for key, arc in net.arcs.items():
        assert arc.logistics_cost == pytest.approx(
            arc.total_length * 6.0 / 2.5 + arc.tolls
        )


# ---------------------------------------------------------------------------
# traffic stats and instance
# ---------------------------------------------------------------------------

def test_traffic_stats_loader(tmp_path):
    (tmp_path / "traffic.toml").write_text(
        "federal_daily_volume = 1000000\n"
        "sp_heavy_count = 200000\n"
        "sp_total_count = 1000000\n"
        "accident_count = 1000\n"
    )
    stats = load_traffic_stats(tmp_path / "traffic.toml")
    assert stats.sp_heavy_count == 200000
    with pytest.raises(DataError, match="missing key"):
        (tmp_path / "bad.toml").write_text("federal_daily_volume = 1\n")
        load_traffic_stats(tmp_path / "bad.toml")


def test_traffic_stats_validation():
    with pytest.raises(DataError):
        TrafficStats(1000, -1, 1000, 10)
    with pytest.raises(DataError):
        TrafficStats(1000, 2000, 1000, 10)  # heavy > total


def test_instance_loader_binds_network(small_files):
    net = load_network(small_files / "roads.csv", small_files / "arcs.csv")
    instance = load_instance(small_files / "instance.toml", net)
    assert instance.depot == "d"
    assert instance.customers == ["a", "b", "c"]
    assert instance.total_demand == 15.0


def test_instance_rejects_missing_arc_coverage(small_files):
    text = (small_files / "arcs.csv").read_text()
    # Drop the b->c row: pair (b, c) becomes unreachable.
    (small_files / "arcs.csv").write_text(
        "\n".join(l for l in text.splitlines() if not l.startswith("b,c")) + "\n"
    )
    net = load_network(small_files / "roads.csv", small_files / "arcs.csv")
    with pytest.raises(DataError, match="b->c missing"):
        load_instance(small_files / "instance.toml", net)


def test_instance_rejects_overloaded_fleet(small_files):
    net = load_network(small_files / "roads.csv", small_files / "arcs.csv")
    text = (small_files / "instance.toml").read_text().replace("capacity = 10", "capacity = 7")
    (small_files / "instance.toml").write_text(text)
    with pytest.raises(DataError, match="demand"):
        load_instance(small_files / "instance.toml", net)


def test_instance_rejects_depot_demand(small_files):
    net = load_network(small_files / "roads.csv", small_files / "arcs.csv")
    text = (small_files / "instance.toml").read_text().replace(
        'name = "Depot"\ndemand = 0.0', 'name = "Depot"\ndemand = 1.0'
    )
    (small_files / "instance.toml").write_text(text)
    with pytest.raises(DataError, match="depot"):
        load_instance(small_files / "instance.toml", net)
