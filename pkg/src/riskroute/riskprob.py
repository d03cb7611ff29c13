"""Accident-probability pipeline.

Turns aggregate traffic statistics and per-road data into a general
accident probability and per-arc probabilities: each road gets a flow
index and a road-type index relative to the problem-wide means, arcs get
a length-weighted exposure, and the arc probability is the general
probability scaled by that exposure.

Probabilities are fractions in [0, 1] everywhere; percent formatting
happens only in reports.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable

from .domain import (
    Arc,
    ArcNetwork,
    RoadCategory,
    RoadSegment,
    RoadType,
    ROAD_TYPES,
    TrafficStats,
)


class ProbabilityError(ValueError):
    """Inconsistent statistics or exposure that breaks the probability model."""


@dataclass(frozen=True)
class RoadIndexes:
    """Per-road multipliers relative to the problem means.

    ``flow_index`` is the road's heavy-vehicle flow over the mean flow of
    the problem's roads; ``type_index`` is the road type's death rate over
    the mean death rate of the five road categories.
    """

    road_id: str
    flow_index: float
    type_index: float
    mean_flow: float
    mean_death_rate: float

    def __post_init__(self) -> None:
        if self.flow_index < 0:
            raise ProbabilityError(f"road {self.road_id}: flow index must be >= 0")
        if not self.type_index > 0:
            raise ProbabilityError(f"road {self.road_id}: type index must be > 0")


def general_probability(stats: TrafficStats) -> float:
    """Probability of a heavy-vehicle accident on an average trip.

    Scales the federal daily volume by the state heavy-vehicle share to
    estimate the heavy-vehicle count, then divides the accident count by
    it.  Returns a fraction in [0, 1].
    """
    if not stats.sp_total_count > 0:
        raise ProbabilityError("zero total state volume")
    if stats.accident_count == 0:
        return 0.0
    heavy_share = stats.sp_heavy_count / stats.sp_total_count
    heavy_count = heavy_share * stats.federal_daily_volume
    if not heavy_count > 0:
        raise ProbabilityError(
            "computed heavy-vehicle count is zero but accidents were recorded"
        )
    p = stats.accident_count / heavy_count
    if p > 1.0:
        raise ProbabilityError(
            f"accident count {stats.accident_count} exceeds heavy-vehicle count "
            f"{heavy_count}: probability above 1"
        )
    return p


def road_indexes(
    roads: Iterable[RoadSegment],
    types: dict[RoadCategory, RoadType] = ROAD_TYPES,
) -> dict[str, RoadIndexes]:
    """Compute flow and type indexes for every distinct road in ``roads``.

    The mean flow is taken over the distinct roads present; the mean death
    rate is always taken over the five road categories of ``types``,
    regardless of how many categories the roads actually use.
    """
    if set(types) != set(RoadCategory):
        raise ProbabilityError("type table must cover exactly the five road categories")

    flows: dict[str, float] = {}
    rates: dict[str, float] = {}
    for seg in roads:
        rate = seg.road_type.death_rate
        if seg.road_id in flows:
            if flows[seg.road_id] != seg.heavy_vehicle_flow or rates[seg.road_id] != rate:
                raise ProbabilityError(
                    f"road {seg.road_id!r} appears with inconsistent flow or type"
                )
            continue
        flows[seg.road_id] = seg.heavy_vehicle_flow
        rates[seg.road_id] = rate
    if not flows:
        raise ProbabilityError("empty road set")

    mean_flow = sum(flows.values()) / len(flows)
    mean_death_rate = sum(t.death_rate for t in types.values()) / len(types)
    if mean_flow == 0:
        raise ProbabilityError("mean flow over the road set is zero")

    return {
        road_id: RoadIndexes(
            road_id=road_id,
            flow_index=1.0 + (flows[road_id] - mean_flow) / mean_flow,
            type_index=1.0 + (rates[road_id] - mean_death_rate) / mean_death_rate,
            mean_flow=mean_flow,
            mean_death_rate=mean_death_rate,
        )
        for road_id in flows
    }


def arc_exposure(arc: Arc, indexes: dict[str, RoadIndexes]) -> float:
    """Length-weighted mean of flow-index x type-index over the arc's segments."""
    if not arc.total_length > 0:
        raise ProbabilityError(f"arc {arc.from_node}->{arc.to_node}: non-positive length")
    weighted = 0.0
    for seg in arc.segments:
        idx = indexes.get(seg.road_id)
        if idx is None:
            raise ProbabilityError(
                f"arc {arc.from_node}->{arc.to_node}: no indexes for road {seg.road_id!r}"
            )
        weighted += idx.flow_index * idx.type_index * seg.length_on_arc
    return weighted / arc.total_length


def arc_accident_probability(p_general: float, e: float) -> float:
    """Scale the general probability by an arc's exposure."""
    if not 0.0 <= p_general <= 1.0:
        raise ProbabilityError(f"general probability {p_general} outside [0, 1]")
    if e < 0:
        raise ProbabilityError(f"exposure must be >= 0, got {e}")
    p = p_general * e
    if p > 1.0:
        raise ProbabilityError(
            f"exposure {e} drives probability above certainty (p_general {p_general})"
        )
    return p


def annotate_probabilities(
    network: ArcNetwork,
    stats: TrafficStats,
    types: dict[RoadCategory, RoadType] = ROAD_TYPES,
) -> ArcNetwork:
    """Fill exposure and accident probability on every arc of the network.

    The general probability is computed once and reused for all arcs.
    """
    p_general = general_probability(stats)
    all_segments = [seg for arc in network.arcs.values() for seg in arc.segments]
    indexes = road_indexes(all_segments, types)

    def enrich(arc: Arc) -> Arc:
        e = arc_exposure(arc, indexes)
        return replace(
            arc, exposure=e, accident_probability=arc_accident_probability(p_general, e)
        )

    return network.map_arcs(enrich)


def write_probabilities_report(network: ArcNetwork, path: str | Path) -> Path:
    """Write the per-arc probability report CSV (probability in percent)."""
    path = Path(path)
    lines = ["from,to,exposure,paccident_pct"]
    for key in sorted(network.arcs):
        arc = network.arcs[key]
        if arc.exposure is None or arc.accident_probability is None:
            raise ProbabilityError(f"arc {key[0]}->{key[1]}: probabilities not computed")
        lines.append(
            f"{arc.from_node},{arc.to_node},{arc.exposure:.6f},{arc.accident_probability * 100:.6f}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
