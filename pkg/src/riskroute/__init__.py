"""Risk-aware capacitated vehicle routing toolkit.

Pipeline: ingest a road network and fleet instance, attach logistics
costs, derive per-arc accident probabilities from regional traffic
statistics, estimate expected accident cost per arc by Monte Carlo,
then solve the alpha-weighted routing problem and sweep alpha to map
the logistics/risk trade-off.
"""

from .domain import (
    Arc,
    ArcNetwork,
    DataError,
    Instance,
    Node,
    RoadCategory,
    RoadSegment,
    RoadType,
    TrafficStats,
    compute_logistics_cost,
    load_instance,
    load_network,
    load_traffic_stats,
    with_logistics_costs,
)
from .mcsim import (
    CostDistribution,
    LossBracketTable,
    RiskEstimate,
    annotate_risk_costs,
    build_cost_distribution,
    estimate_risk_cost,
    expected_risk_cost,
    load_bracket_table,
    sample_trip_cost,
    substream_seed,
)
from .riskprob import (
    ProbabilityError,
    RoadIndexes,
    annotate_probabilities,
    arc_accident_probability,
    arc_exposure,
    general_probability,
    road_indexes,
)
from .solver import (
    HeuristicParams,
    Route,
    Solution,
    SolverError,
    ValidationReport,
    detect_subtours,
    serialize_solution,
    solve_exact,
    solve_heuristic,
    validate_solution,
    weighted_arc_cost,
)
from .sweep import (
    SweepPoint,
    SweepResult,
    alpha_sweep,
    canonical_route_set,
    default_alpha_grid,
    export_report,
    format_alpha,
    instance_fingerprint,
    transition_points,
)

__version__ = "0.1.0"
