"""Core data model, dataset ingestion, and logistics-cost computation.

Defines the road/arc/instance types shared by the probability, simulation,
and routing modules, plus the CSV/TOML loaders for the file-based datasets.
All loaded objects are immutable; enrichment steps (costs, probabilities)
produce new copies via :func:`dataclasses.replace`.
"""

from __future__ import annotations

import csv
import enum
import io
import sys
from dataclasses import dataclass, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

# Relative tolerance for checking that segment lengths add up to the arc length.
LENGTH_SUM_RTOL = 1e-6


class DataError(ValueError):
    """An input file or record violates the data contract."""


class RoadCategory(enum.Enum):
    """The five road categories of the national accident panel."""

    CENTRAL_SAFETY_LANE = "central_safety_lane"
    CENTRAL_BARRIER = "central_barrier"
    CENTRAL_LINE = "central_line"
    SINGLE_ONE_WAY = "single_one_way"
    SINGLE_TWO_WAY = "single_two_way"


@dataclass(frozen=True)
class RoadType:
    category: RoadCategory
    death_rate: float  # deaths per 100 accidents

    def __post_init__(self) -> None:
        if not self.death_rate > 0:
            raise DataError(
                f"death rate must be positive, got {self.death_rate} for {self.category.value}"
            )


# Deaths per 100 accidents by road category (bundled road-safety table).
DEATH_RATES: dict[RoadCategory, float] = {
    RoadCategory.CENTRAL_SAFETY_LANE: 12.3,
    RoadCategory.CENTRAL_BARRIER: 8.5,
    RoadCategory.CENTRAL_LINE: 18.0,
    RoadCategory.SINGLE_ONE_WAY: 11.9,
    RoadCategory.SINGLE_TWO_WAY: 22.3,
}

ROAD_TYPES: dict[RoadCategory, RoadType] = {
    cat: RoadType(cat, rate) for cat, rate in DEATH_RATES.items()
}


@dataclass(frozen=True)
class RoadSegment:
    """A stretch of one physical road traversed by an arc."""

    road_id: str
    road_type: RoadType
    heavy_vehicle_flow: float  # vehicles/day
    length_on_arc: float  # km

    def __post_init__(self) -> None:
        if self.heavy_vehicle_flow < 0:
            raise DataError(f"road {self.road_id}: heavy vehicle flow must be >= 0")
        if not self.length_on_arc > 0:
            raise DataError(f"road {self.road_id}: segment length must be > 0")


@dataclass(frozen=True)
class Arc:
    """An origin-destination leg composed of one or more road segments.

    ``logistics_cost``, ``exposure``, ``accident_probability`` and
    ``risk_cost`` start unset and are filled in by later pipeline stages.
    """

    from_node: str
    to_node: str
    segments: tuple[RoadSegment, ...]
    total_length: float  # km
    tolls: float = 0.0
    logistics_cost: float | None = None
    exposure: float | None = None
    accident_probability: float | None = None
    risk_cost: float | None = None

    def __post_init__(self) -> None:
        seg_sum = sum(s.length_on_arc for s in self.segments)
        if abs(seg_sum - self.total_length) > LENGTH_SUM_RTOL * max(abs(self.total_length), 1e-12):
            raise DataError(
                f"arc {self.from_node}->{self.to_node}: segment lengths sum to "
                f"{seg_sum} but total length is {self.total_length}"
            )
        if self.tolls < 0:
            raise DataError(f"arc {self.from_node}->{self.to_node}: tolls must be >= 0")
        if self.logistics_cost is not None and self.logistics_cost < 0:
            raise DataError(f"arc {self.from_node}->{self.to_node}: logistics cost must be >= 0")
        if self.risk_cost is not None and self.risk_cost < 0:
            raise DataError(f"arc {self.from_node}->{self.to_node}: risk cost must be >= 0")
        if self.accident_probability is not None and not (
            0.0 <= self.accident_probability <= 1.0
        ):
            raise DataError(
                f"arc {self.from_node}->{self.to_node}: accident probability "
                f"{self.accident_probability} outside [0, 1]"
            )

    @property
    def key(self) -> tuple[str, str]:
        return (self.from_node, self.to_node)


@dataclass(frozen=True)
class TrafficStats:
    """Aggregate traffic and accident counts used for the general probability."""

    federal_daily_volume: float  # vehicles/day on federal roads
    sp_heavy_count: float  # heavy vehicles/day on state roads
    sp_total_count: float  # all vehicles/day on state roads
    accident_count: float  # accidents over the observation period

    def __post_init__(self) -> None:
        for name in ("federal_daily_volume", "sp_heavy_count", "sp_total_count", "accident_count"):
            if getattr(self, name) < 0:
                raise DataError(f"traffic stats: {name} must be >= 0")
        if not self.sp_total_count > 0:
            raise DataError("traffic stats: zero total state volume")
        if self.sp_heavy_count > self.sp_total_count:
            raise DataError("traffic stats: heavy-vehicle count exceeds total count")


@dataclass(frozen=True)
class Node:
    id: str
    name: str
    lat: float | None = None
    lon: float | None = None


@dataclass(frozen=True)
class ArcNetwork:
    """All arcs of a problem, keyed by ordered (from, to) node pair.

    Undirected datasets are stored mirrored: both orientations share the
    same segment tuple and tolls, so any (from, to) lookup succeeds.
    """

    arcs: dict[tuple[str, str], Arc]
    road_flows: dict[str, float]  # road id -> heavy vehicles/day
    road_types: dict[str, RoadType]  # road id -> type

    def arc(self, from_node: str, to_node: str) -> Arc:
        try:
            return self.arcs[(from_node, to_node)]
        except KeyError:
            raise KeyError(f"no arc {from_node}->{to_node} in network") from None

    def node_ids(self) -> set[str]:
        out: set[str] = set()
        for a, b in self.arcs:
            out.add(a)
            out.add(b)
        return out

    def map_arcs(self, fn) -> "ArcNetwork":
        """Return a new network with ``fn`` applied to every arc."""
        return ArcNetwork(
            arcs={k: fn(arc) for k, arc in self.arcs.items()},
            road_flows=dict(self.road_flows),
            road_types=dict(self.road_types),
        )


@dataclass(frozen=True)
class Instance:
    """A routing problem: depot, customers with demands, fleet, and arcs."""

    nodes: tuple[Node, ...]
    depot: str
    demands: dict[str, float]
    vehicle_count: int
    capacity: float
    arcs: ArcNetwork

    def __post_init__(self) -> None:
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise DataError("instance: duplicate node ids")
        if self.depot not in ids:
            raise DataError(f"instance: depot {self.depot!r} is not a declared node")
        if self.demands.get(self.depot, 0.0) != 0.0:
            raise DataError("instance: depot demand must be 0")
        for node_id in ids:
            if node_id == self.depot:
                continue
            d = self.demands.get(node_id)
            if d is None:
                raise DataError(f"instance: node {node_id!r} has no demand")
            if not d > 0:
                raise DataError(f"instance: customer {node_id!r} demand must be > 0")
        if self.vehicle_count < 1:
            raise DataError("instance: vehicle count must be >= 1")
        if not self.capacity > 0:
            raise DataError("instance: capacity must be > 0")
        total = sum(self.demands[c] for c in self.customers)
        if total > self.vehicle_count * self.capacity:
            raise DataError(
                f"instance: total demand {total} exceeds fleet capacity "
                f"{self.vehicle_count} x {self.capacity}"
            )
        # Every ordered pair of distinct physical nodes must be routable.
        for a in ids:
            for b in ids:
                if a != b and (a, b) not in self.arcs.arcs:
                    raise DataError(f"instance: arc {a}->{b} missing from network")

    @property
    def customers(self) -> list[str]:
        return [n.id for n in self.nodes if n.id != self.depot]

    @property
    def total_demand(self) -> float:
        return sum(self.demands[c] for c in self.customers)


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

_ROADS_HEADER = ["road_id", "road_type", "heavy_vehicle_flow"]
_ARCS_HEADER = ["from", "to", "segment_road_id", "segment_length_km", "tolls_money"]

_CATEGORY_BY_VALUE = {cat.value: cat for cat in RoadCategory}


def _read_rows(path: Path, expected_header: list[str]) -> list[tuple[int, list[str]]]:
    if not path.exists():
        raise DataError(f"missing file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        rows = [(i + 1, row) for i, row in enumerate(reader) if row]
    if not rows or [c.strip() for c in rows[0][1]] != expected_header:
        raise DataError(f"{path}: expected header {','.join(expected_header)}")
    return rows[1:]


def _parse_float(text: str, what: str, path: Path, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise DataError(f"{path} row {line}: malformed {what} {text!r}") from None


def load_network(roads_file: str | Path, arcs_file: str | Path) -> ArcNetwork:
    """Load roads and arcs CSVs into a mirrored arc network.

    Arc rows are one per segment; the tolls value is taken from the first
    segment row of each arc.  Every declared arc is mirrored to the
    opposite direction unless that direction is itself declared.
    Derived fields (costs, exposure, probabilities) are left unset.
    """
    roads_path, arcs_path = Path(roads_file), Path(arcs_file)

    road_flows: dict[str, float] = {}
    road_types: dict[str, RoadType] = {}
    for line, row in _read_rows(roads_path, _ROADS_HEADER):
        if len(row) != len(_ROADS_HEADER):
            raise DataError(f"{roads_path} row {line}: expected {len(_ROADS_HEADER)} columns")
        road_id, type_name, flow_text = (c.strip() for c in row)
        if road_id in road_flows:
            raise DataError(f"{roads_path} row {line}: duplicate road id {road_id!r}")
        category = _CATEGORY_BY_VALUE.get(type_name)
        if category is None:
            raise DataError(
                f"{roads_path} row {line}: unknown road type {type_name!r} "
                f"(expected one of {sorted(_CATEGORY_BY_VALUE)})"
            )
        flow = _parse_float(flow_text, "heavy_vehicle_flow", roads_path, line)
        if flow < 0:
            raise DataError(f"{roads_path} row {line}: negative flow {flow}")
        road_flows[road_id] = flow
        road_types[road_id] = ROAD_TYPES[category]

    # Group consecutive segment rows by (from, to).
    seg_rows: dict[tuple[str, str], list[tuple[int, str, float]]] = {}
    tolls_by_arc: dict[tuple[str, str], float] = {}
    for line, row in _read_rows(arcs_path, _ARCS_HEADER):
        if len(row) != len(_ARCS_HEADER):
            raise DataError(f"{arcs_path} row {line}: expected {len(_ARCS_HEADER)} columns")
        frm, to, road_id, length_text, tolls_text = (c.strip() for c in row)
        if frm == to:
            raise DataError(f"{arcs_path} row {line}: arc endpoints must differ")
        if road_id not in road_flows:
            raise DataError(f"{arcs_path} row {line}: unknown road id {road_id!r}")
        length = _parse_float(length_text, "segment_length_km", arcs_path, line)
        if not length > 0:
            raise DataError(f"{arcs_path} row {line}: non-positive length {length}")
        key = (frm, to)
        if key not in seg_rows:
            seg_rows[key] = []
            tolls = _parse_float(tolls_text or "0", "tolls_money", arcs_path, line)
            if tolls < 0:
                raise DataError(f"{arcs_path} row {line}: negative tolls {tolls}")
            tolls_by_arc[key] = tolls
        seg_rows[key].append((line, road_id, length))

    arcs: dict[tuple[str, str], Arc] = {}
    for key, segs in seg_rows.items():
        segments = tuple(
            RoadSegment(
                road_id=road_id,
                road_type=road_types[road_id],
                heavy_vehicle_flow=road_flows[road_id],
                length_on_arc=length,
            )
            for _, road_id, length in segs
        )
        arcs[key] = Arc(
            from_node=key[0],
            to_node=key[1],
            segments=segments,
            total_length=sum(s.length_on_arc for s in segments),
            tolls=tolls_by_arc[key],
        )

    # Mirror: costs are symmetric by default, directed overrides win.
    for key in list(arcs):
        rev = (key[1], key[0])
        if rev not in arcs:
            arc = arcs[key]
            arcs[rev] = replace(arc, from_node=rev[0], to_node=rev[1])

    return ArcNetwork(arcs=arcs, road_flows=road_flows, road_types=road_types)


def _fmt(value: float) -> str:
    # repr() of a float is the shortest round-trip form, hence canonical.
    return repr(float(value))


def serialize_network(network: ArcNetwork) -> tuple[str, str]:
    """Render the network to canonical roads/arcs CSV text.

    Mirrored arc pairs are emitted once, in sorted (from, to) order;
    genuinely directed pairs are emitted in both orientations.  Loading
    the output reproduces the same network and the same bytes.
    """
    roads_out = io.StringIO()
    writer = csv.writer(roads_out, lineterminator="\n")
    writer.writerow(_ROADS_HEADER)
    for road_id in sorted(network.road_flows):
        writer.writerow(
            [road_id, network.road_types[road_id].category.value, _fmt(network.road_flows[road_id])]
        )

    def payload(arc: Arc) -> tuple:
        return (arc.segments, arc.tolls)

    emit: list[Arc] = []
    for key in sorted(network.arcs):
        arc = network.arcs[key]
        rev = network.arcs.get((key[1], key[0]))
        if rev is not None and key[0] > key[1] and payload(rev) == payload(arc):
            continue  # mirror of an already-emitted arc
        emit.append(arc)

    arcs_out = io.StringIO()
    writer = csv.writer(arcs_out, lineterminator="\n")
    writer.writerow(_ARCS_HEADER)
    for arc in emit:
        for i, seg in enumerate(arc.segments):
            writer.writerow(
                [
                    arc.from_node,
                    arc.to_node,
                    seg.road_id,
                    _fmt(seg.length_on_arc),
                    _fmt(arc.tolls) if i == 0 else "",
                ]
            )
    return roads_out.getvalue(), arcs_out.getvalue()


def load_traffic_stats(path: str | Path) -> TrafficStats:
    """Read the flat key/value traffic statistics file."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"missing file: {path}")
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise DataError(f"{path}: {exc}") from None
    try:
        return TrafficStats(
            federal_daily_volume=float(data["federal_daily_volume"]),
            sp_heavy_count=float(data["sp_heavy_count"]),
            sp_total_count=float(data["sp_total_count"]),
            accident_count=float(data["accident_count"]),
        )
    except KeyError as exc:
        raise DataError(f"{path}: missing key {exc.args[0]!r}") from None


def load_instance(path: str | Path, network: ArcNetwork) -> Instance:
    """Read the instance file (nodes, demands, fleet) and bind it to a network."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"missing file: {path}")
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise DataError(f"{path}: {exc}") from None

    try:
        raw_nodes = data["nodes"]
        depot = str(data["depot"])
        vehicle_count = int(data["vehicle_count"])
        capacity = float(data["capacity"])
    except KeyError as exc:
        raise DataError(f"{path}: missing key {exc.args[0]!r}") from None

    nodes: list[Node] = []
    demands: dict[str, float] = {}
    for entry in raw_nodes:
        try:
            node_id = str(entry["id"])
            demands[node_id] = float(entry.get("demand", 0.0))
            nodes.append(
                Node(
                    id=node_id,
                    name=str(entry.get("name", node_id)),
                    lat=float(entry["lat"]) if "lat" in entry else None,
                    lon=float(entry["lon"]) if "lon" in entry else None,
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"{path}: malformed node entry {entry!r}: {exc}") from None

    return Instance(
        nodes=tuple(nodes),
        depot=depot,
        demands=demands,
        vehicle_count=vehicle_count,
        capacity=capacity,
        arcs=network,
    )


# ---------------------------------------------------------------------------
# logistics cost
# ---------------------------------------------------------------------------

def compute_logistics_cost(
    arc: Arc, fuel_price: float, consumption: float, tolls: float
) -> float:
    """Arc traversal cost: fuel burned over the arc length plus tolls.

    ``fuel_price`` is money per liter, ``consumption`` km per liter.
    """
    if not consumption > 0:
        raise ValueError(f"consumption must be positive, got {consumption}")
    if fuel_price < 0:
        raise ValueError(f"fuel price must be >= 0, got {fuel_price}")
    if tolls < 0:
        raise ValueError(f"tolls must be >= 0, got {tolls}")
    return arc.total_length * fuel_price / consumption + tolls


def with_logistics_costs(
    network: ArcNetwork, fuel_price: float, consumption: float
) -> ArcNetwork:
    """Return a network with every arc's logistics cost filled in."""
    return network.map_arcs(
        lambda arc: replace(
            arc,
            logistics_cost=compute_logistics_cost(arc, fuel_price, consumption, arc.tolls),
        )
    )
