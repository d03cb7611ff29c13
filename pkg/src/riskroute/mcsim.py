"""Per-arc risk costing by seeded Monte Carlo over insurance loss brackets.

An arc's trip-cost distribution has a no-accident outcome (cost 0) plus
one outcome per loss bracket, each costing the deductible share of the
bracket's valuation.  Risk cost is the Monte Carlo mean of that
distribution; a closed-form expectation is provided as the oracle.

Randomness comes from numpy's PCG64 generator (128-bit state, O'Neill's
permuted congruential family), so a (seed, iterations, distribution)
triple reproduces estimates bit-for-bit.  Per-arc substream seeds are
derived by SHA-256 from the global seed and the arc's endpoint pair, so
arcs can be estimated in any order, or in parallel, with identical
results.
"""

from __future__ import annotations

import hashlib
import math
import sys
from bisect import bisect_right
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .domain import ArcNetwork, DataError

DEFAULT_DEDUCTIBLE_RATE = 0.01
DEFAULT_OPEN_BRACKET_CAP = 1_000_000.0
DEFAULT_ITERATIONS = 1_000_000

# Draws are generated in chunks of this size to bound memory.
_CHUNK = 1 << 20


@dataclass(frozen=True)
class LossBracketTable:
    """Insurance loss ranges with occurrence shares and deductible policy.

    Brackets are (upper_bound, occurrence) pairs ordered by upper bound;
    an unbounded top range is encoded with ``upper_bound = inf`` and
    valued at ``open_bracket_cap``.
    """

    brackets: tuple[tuple[float, float], ...]
    deductible_rate: float = DEFAULT_DEDUCTIBLE_RATE
    open_bracket_cap: float = DEFAULT_OPEN_BRACKET_CAP

    def __post_init__(self) -> None:
        if not self.brackets:
            raise DataError("loss bracket table is empty")
        prev = 0.0
        for upper, occurrence in self.brackets:
            if not upper > prev:
                raise DataError(
                    f"bracket upper bounds must be positive and strictly increasing, got {upper}"
                )
            if occurrence < 0:
                raise DataError(f"bracket occurrence must be >= 0, got {occurrence}")
            prev = upper
        total = sum(occ for _, occ in self.brackets)
        if abs(total - 1.0) > 1e-9:
            raise DataError(f"bracket occurrences sum to {total}, expected 1.0")
        if not 0.0 < self.deductible_rate <= 1.0:
            raise DataError(f"deductible rate {self.deductible_rate} outside (0, 1]")
        if not self.open_bracket_cap > 0:
            raise DataError("open bracket cap must be > 0")

    def bracket_cost(self, upper_bound: float) -> float:
        """Carrier cost for a loss in the bracket: deductible share of the
        bracket's valuation (its upper bound, capped for the open range)."""
        return self.deductible_rate * min(upper_bound, self.open_bracket_cap)


# Bundled insurer loss-range shares (open top range valued at the cap).
DEFAULT_BRACKETS: tuple[tuple[float, float], ...] = (
    (200_000.0, 0.3791),
    (300_000.0, 0.2417),
    (500_000.0, 0.1991),
    (1_000_000.0, 0.1611),
    (math.inf, 0.0190),
)

DEFAULT_TABLE = LossBracketTable(brackets=DEFAULT_BRACKETS)


@dataclass(frozen=True)
class CostDistribution:
    """Discrete trip-cost distribution as (cost, cumulative) outcomes.

    The first outcome is the no-accident region (cost 0, cumulative
    1 - accident probability).  The cumulative of the last outcome is 1.
    """

    outcomes: tuple[tuple[float, float], ...]
    accident_probability: float

    def __post_init__(self) -> None:
        if not self.outcomes:
            raise DataError("cost distribution has no outcomes")
        first_cost, first_cum = self.outcomes[0]
        if first_cost != 0.0:
            raise DataError("first outcome must have cost 0")
        if abs(first_cum - (1.0 - self.accident_probability)) > 1e-12:
            raise DataError("first cumulative must equal 1 - accident probability")
        prev = -math.inf
        for _, cum in self.outcomes:
            if not cum > prev:
                raise DataError("cumulative values must be strictly increasing")
            prev = cum
        if abs(prev - 1.0) > 1e-12:
            raise DataError(f"last cumulative is {prev}, expected 1.0")

    @property
    def costs(self) -> tuple[float, ...]:
        return tuple(c for c, _ in self.outcomes)

    @property
    def cumulatives(self) -> tuple[float, ...]:
        return tuple(c for _, c in self.outcomes)


@dataclass(frozen=True)
class RiskEstimate:
    mean: float
    std_error: float


def build_cost_distribution(p_accident: float, table: LossBracketTable) -> CostDistribution:
    """Assemble the trip-cost distribution for an arc with accident
    probability ``p_accident`` under the given loss-bracket policy.

    Bracket regions that carry no probability mass are dropped, so the
    cumulative stays strictly increasing (a zero probability collapses the
    distribution to the single no-accident outcome).
    """
    if not 0.0 <= p_accident <= 1.0:
        raise DataError(f"accident probability {p_accident} outside [0, 1]")
    outcomes: list[tuple[float, float]] = [(0.0, 1.0 - p_accident)]
    cum = 1.0 - p_accident
    for upper, occurrence in table.brackets:
        new_cum = cum + p_accident * occurrence
        if new_cum > cum:
            outcomes.append((table.bracket_cost(upper), new_cum))
            cum = new_cum
    if len(outcomes) > 1:
        # The CDF must end at exactly 1; absorb occurrence rounding here.
        cost, _ = outcomes[-1]
        outcomes[-1] = (cost, 1.0)
    return CostDistribution(outcomes=tuple(outcomes), accident_probability=p_accident)


def sample_trip_cost(dist: CostDistribution, u: float) -> float:
    """Inverse-CDF lookup: cost of the first outcome whose cumulative
    exceeds ``u``.  Regions are half-open, so a draw equal to a boundary
    falls into the next region."""
    if not 0.0 <= u < 1.0:
        raise ValueError(f"uniform draw {u} outside [0, 1)")
    idx = bisect_right(dist.cumulatives, u)
    return dist.outcomes[idx][0]


def expected_risk_cost(dist: CostDistribution) -> float:
    """Closed-form expectation of the trip-cost distribution."""
    expected = 0.0
    prev_cum = 0.0
    for cost, cum in dist.outcomes:
        expected += (cum - prev_cum) * cost
        prev_cum = cum
    return expected


def estimate_risk_cost(
    dist: CostDistribution, iterations: int = DEFAULT_ITERATIONS, seed: int = 0
) -> RiskEstimate:
    """Monte Carlo mean trip cost with its standard error.

    Draws ``iterations`` uniforms from PCG64 seeded with ``seed`` and maps
    them through the inverse CDF.  Outcome hits are tallied exactly, so
    the estimate is reproducible bit-for-bit for a given platform.
    """
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    cums = np.asarray(dist.cumulatives)
    costs = np.asarray(dist.costs)
    rng = np.random.Generator(np.random.PCG64(seed))

    counts = np.zeros(len(costs), dtype=np.int64)
    remaining = iterations
    while remaining > 0:
        n = min(remaining, _CHUNK)
        u = rng.random(n)
        idx = np.searchsorted(cums, u, side="right")
        counts += np.bincount(idx, minlength=len(costs))
        remaining -= n

    total = float(counts @ costs)
    total_sq = float(counts @ (costs * costs))
    mean = total / iterations
    if iterations == 1:
        return RiskEstimate(mean=mean, std_error=0.0)
    var = max(total_sq - iterations * mean * mean, 0.0) / (iterations - 1)
    return RiskEstimate(mean=mean, std_error=math.sqrt(var / iterations))


def substream_seed(global_seed: int, from_node: str, to_node: str) -> int:
    """Deterministic 64-bit seed for one arc's sampling stream.

    The endpoint pair is canonicalized (unordered), so mirrored arcs share
    a stream and symmetric inputs yield symmetric risk costs.
    """
    a, b = sorted((from_node, to_node))
    digest = hashlib.sha256(f"{global_seed}:{a}|{b}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def annotate_risk_costs(
    network: ArcNetwork,
    table: LossBracketTable | None = None,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
) -> tuple[ArcNetwork, dict[tuple[str, str], RiskEstimate]]:
    """Estimate risk cost for every arc; returns the enriched network and
    the per-arc estimates.

    Mirrored arc pairs share one estimate (same distribution, same
    substream), computed once.
    """
    if table is None:
        table = DEFAULT_TABLE
    memo: dict[tuple[tuple[str, str], float], RiskEstimate] = {}
    estimates: dict[tuple[str, str], RiskEstimate] = {}

    for key in sorted(network.arcs):
        arc = network.arcs[key]
        if arc.accident_probability is None:
            raise DataError(f"arc {key[0]}->{key[1]}: accident probability not computed")
        canonical = tuple(sorted(key))
        memo_key = (canonical, arc.accident_probability)
        est = memo.get(memo_key)
        if est is None:
            dist = build_cost_distribution(arc.accident_probability, table)
            est = estimate_risk_cost(dist, iterations, substream_seed(seed, *key))
            memo[memo_key] = est
        estimates[key] = est

    enriched = network.map_arcs(lambda arc: replace(arc, risk_cost=estimates[arc.key].mean))
    return enriched, estimates


def load_bracket_table(
    path: str | Path,
    deductible_rate: float | None = None,
    open_bracket_cap: float | None = None,
) -> LossBracketTable:
    """Read a loss-bracket TOML file; explicit arguments override the file."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"missing file: {path}")
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise DataError(f"{path}: {exc}") from None
    try:
        brackets = tuple(
            (float(b["upper_bound"]), float(b["occurrence"])) for b in data["brackets"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"{path}: malformed brackets: {exc}") from None
    return LossBracketTable(
        brackets=brackets,
        deductible_rate=(
            deductible_rate
            if deductible_rate is not None
            else float(data.get("deductible_rate", DEFAULT_DEDUCTIBLE_RATE))
        ),
        open_bracket_cap=(
            open_bracket_cap
            if open_bracket_cap is not None
            else float(data.get("open_bracket_cap", DEFAULT_OPEN_BRACKET_CAP))
        ),
    )


def write_risk_report(
    network: ArcNetwork,
    estimates: dict[tuple[str, str], RiskEstimate],
    iterations: int,
    seed: int,
    path: str | Path,
) -> Path:
    """Write the per-arc risk cost report CSV."""
    path = Path(path)
    lines = ["from,to,paccident,risk_cost_mean,std_error,iterations,seed"]
    for key in sorted(network.arcs):
        arc = network.arcs[key]
        est = estimates.get(key)
        if est is None or arc.accident_probability is None:
            raise DataError(f"arc {key[0]}->{key[1]}: risk cost not computed")
        lines.append(
            f"{arc.from_node},{arc.to_node},{arc.accident_probability:.8f},"
            f"{est.mean:.6f},{est.std_error:.6f},{iterations},{seed}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
