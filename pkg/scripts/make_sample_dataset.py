"""Generate the bundled sample dataset.

Ten cities in the Limeira region, a complete arc graph over twelve
state roads, regional traffic statistics, the insurer loss table, a
9-customer instance that needs all three vehicles, and a run config.
Flows are chosen so the road-flow mean is exactly 2000 and the general
accident probability is exactly 0.0095, which puts the benchmark arcs
in the ballpark of the published per-arc probabilities.

Deterministic: rerunning rewrites identical files.  Output goes to
src/riskroute/data/ by default.
"""

from __future__ import annotations

import argparse
import math
import random
from pathlib import Path

from riskroute.domain import (
    ROAD_TYPES,
    Arc,
    ArcNetwork,
    RoadCategory,
    RoadSegment,
    load_network,
    serialize_network,
)

CITIES: list[tuple[str, str, float, float, float]] = [
    # id, display name, lat, lon, demand (tonnes)
    ("limeira", "Limeira", -22.566, -47.402, 0.0),
    ("piracicaba", "Piracicaba", -22.725, -47.649, 4.0),
    ("santa_barbara", "Santa Barbara d'Oeste", -22.753, -47.414, 3.0),
    ("americana", "Americana", -22.739, -47.331, 4.0),
    ("cosmopolis", "Cosmopolis", -22.646, -47.196, 2.0),
    ("artur_nogueira", "Artur Nogueira", -22.573, -47.173, 3.0),
    ("holambra", "Holambra", -22.632, -47.053, 2.0),
    ("jaguariuna", "Jaguariuna", -22.704, -46.985, 4.0),
    ("mogi_mirim", "Mogi Mirim", -22.432, -46.958, 3.0),
    ("araras", "Araras", -22.357, -47.384, 2.0),
]

# Twelve roads; heavy-vehicle flows sum to 24000 so the mean is 2000.
ROADS: list[tuple[str, RoadCategory, float]] = [
    ("SP304", RoadCategory.CENTRAL_BARRIER, 6943),
    ("SP147", RoadCategory.CENTRAL_BARRIER, 535),
    ("SP191", RoadCategory.SINGLE_TWO_WAY, 560),
    ("SP330", RoadCategory.CENTRAL_SAFETY_LANE, 3120),
    ("SP348", RoadCategory.CENTRAL_BARRIER, 2780),
    ("SP133", RoadCategory.SINGLE_TWO_WAY, 1310),
    ("SP332", RoadCategory.CENTRAL_LINE, 1475),
    ("SP340", RoadCategory.CENTRAL_SAFETY_LANE, 2240),
    ("SP095", RoadCategory.SINGLE_ONE_WAY, 830),
    ("SP107", RoadCategory.SINGLE_ONE_WAY, 948),
    ("SP306", RoadCategory.CENTRAL_LINE, 1579),
    ("SP127", RoadCategory.CENTRAL_SAFETY_LANE, 1680),
]

# Benchmark arcs ride a single named road end to end.
PINNED_ARCS: dict[tuple[str, str], str] = {
    ("piracicaba", "santa_barbara"): "SP304",
    ("limeira", "mogi_mirim"): "SP147",
    ("araras", "mogi_mirim"): "SP191",
}

TOLLED_ROADS = {"SP304", "SP330", "SP348"}
ROUTE_FACTOR = 1.25  # road km per geodesic km
VEHICLE_COUNT = 3
CAPACITY = 10.0

TRAFFIC = {
    # HV = 0.2 * 2_000_000 = 400_000; p_general = 3800 / 400_000 = 0.0095
    "federal_daily_volume": 2_000_000,
    "sp_heavy_count": 300_000,
    "sp_total_count": 1_500_000,
    "accident_count": 3_800,
}

BRACKETS = [
    (200_000.0, 0.3791),
    (300_000.0, 0.2417),
    (500_000.0, 0.1991),
    (1_000_000.0, 0.1611),
    ("inf", 0.0190),
]


def haversine_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    rad = math.radians
    dlat = rad(lat2 - lat1)
    dlon = rad(lon2 - lon1)
    a = math.sin(dlat / 2) ** 2 + math.cos(rad(lat1)) * math.cos(rad(lat2)) * math.sin(dlon / 2) ** 2
    return 2 * 6371.0 * math.asin(math.sqrt(a))


def build_network() -> ArcNetwork:
    rng = random.Random(20240601)
    coords = {cid: (lat, lon) for cid, _, lat, lon, _ in CITIES}
    road_ids = [rid for rid, _, _ in ROADS]

    arcs: dict[tuple[str, str], Arc] = {}
    ids = [cid for cid, *_ in CITIES]
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            key = tuple(sorted((a, b)))
            length = round(ROUTE_FACTOR * haversine_km(*coords[a], *coords[b]), 1)
            if key in PINNED_ARCS:
                plan = [PINNED_ARCS[key]]
            else:
                n_seg = 1 if length < 40 else rng.choice([2, 3])
                plan = rng.sample(road_ids, n_seg)
            # Split the length over the plan; the last piece absorbs rounding.
            cuts = sorted(rng.uniform(0.3, 0.7) for _ in range(len(plan) - 1))
            pieces: list[float] = []
            prev = 0.0
            for cut in cuts:
                pieces.append(round(length * cut - prev, 1))
                prev = round(length * cut - prev, 1) + prev
            pieces.append(round(length - sum(pieces), 1))
            segments = []
            for rid, l_h in zip(plan, pieces):
                cat, flow = next((c, f) for r, c, f in ROADS if r == rid)
                segments.append(
                    RoadSegment(
                        road_id=rid,
                        road_type=ROAD_TYPES[cat],
                        heavy_vehicle_flow=flow,
                        length_on_arc=l_h,
                    )
                )
            tolls = round(0.15 * length, 2) if set(plan) & TOLLED_ROADS else 0.0
            arcs[(key[0], key[1])] = Arc(
                from_node=key[0],
                to_node=key[1],
                segments=tuple(segments),
                total_length=length,
                tolls=tolls,
            )

    road_flows = {rid: float(flow) for rid, _, flow in ROADS}
    road_types = {rid: ROAD_TYPES[cat] for rid, cat, _ in ROADS}
    mirrored: dict[tuple[str, str], Arc] = {}
    for key, arc in arcs.items():
        mirrored[key] = arc
        import dataclasses

        mirrored[(key[1], key[0])] = dataclasses.replace(
            arc, from_node=key[1], to_node=key[0]
        )
    return ArcNetwork(arcs=mirrored, road_flows=road_flows, road_types=road_types)


def write_dataset(out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    network = build_network()
    roads_text, arcs_text = serialize_network(network)
    (out_dir / "roads.csv").write_text(roads_text)
    (out_dir / "arcs.csv").write_text(arcs_text)

    traffic_lines = [f"{key} = {value}" for key, value in TRAFFIC.items()]
    (out_dir / "traffic.toml").write_text("\n".join(traffic_lines) + "\n")

    bracket_lines = ["deductible_rate = 0.01", "open_bracket_cap = 1000000.0", ""]
    for upper, occ in BRACKETS:
        bracket_lines += [
            "[[brackets]]",
            f'upper_bound = {"inf" if upper == "inf" else upper}',
            f"occurrence = {occ}",
            "",
        ]
    (out_dir / "brackets.toml").write_text("\n".join(bracket_lines))

    inst_lines = [
        f"vehicle_count = {VEHICLE_COUNT}",
        f"capacity = {CAPACITY}",
        'depot = "limeira"',
        "",
    ]
    for cid, name, lat, lon, demand in CITIES:
        inst_lines += [
            "[[nodes]]",
            f'id = "{cid}"',
            f'name = "{name}"',
            f"lat = {lat}",
            f"lon = {lon}",
            f"demand = {demand}",
            "",
        ]
    (out_dir / "instance.toml").write_text("\n".join(inst_lines))

    config = """[data]
roads = "roads.csv"
arcs = "arcs.csv"
traffic = "traffic.toml"
instance = "instance.toml"
brackets = "brackets.toml"

[costs]
fuel_price = 6.0
consumption = 2.5

[risk]
iterations = 200000
seed = 42

[sweep]
engine = "exact"

[output]
dir = "out"

[service]
host = "127.0.0.1"
port = 8000
"""
    (out_dir / "config.toml").write_text(config)

    # Round-trip sanity: the emitted files must load back to the same bytes.
    reloaded = load_network(out_dir / "roads.csv", out_dir / "arcs.csv")
    roads2, arcs2 = serialize_network(reloaded)
    assert roads2 == roads_text and arcs2 == arcs_text, "round-trip drift"
    total = sum(network.road_flows.values())
    print(f"wrote {out_dir}: {len(network.road_flows)} roads, "
          f"{sum(1 for k in network.arcs if k[0] < k[1])} arc pairs, "
          f"mean flow {total / len(network.road_flows):.1f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        default=str(Path(__file__).parent.parent / "src" / "riskroute" / "data"),
        help="output directory",
    )
    args = parser.parse_args()
    write_dataset(Path(args.out))
