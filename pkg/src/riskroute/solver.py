"""Capacitated vehicle routing with an alpha-weighted bi-objective.

The objective blends logistics and risk cost per arc:
``(1 - alpha) * c + alpha * r``.  Two engines are provided:

* ``solve_exact``: a two-layer dynamic program, the optimal single-route
  cost for every capacity-feasible customer subset (bitmask path DP with
  the depot at both ends), then a set-partition layer that splits the
  customer set into exactly K routes.  Globally optimal; practical up to
  16 customers.
* ``solve_heuristic``: parallel savings construction driven to exactly K
  routes, then 2-opt within each route.

``validate_solution`` and ``detect_subtours`` are independent checkers:
they share no code with the engines and re-derive every constraint from
the instance data.

Ties between equal-objective optima are broken by smaller risk total,
then smaller logistics total, then the route reconstruction order, so
repeated runs produce identical solutions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .domain import Arc, Instance

EXACT_SIZE_LIMIT = 16
_EPS = 1e-9


class SolverError(ValueError):
    """Infeasible instance, missing costs, or engine limits."""


@dataclass(frozen=True)
class Route:
    """One vehicle's tour: depot -> stops... -> depot."""

    vehicle_id: int
    stops: tuple[str, ...]
    load: float
    logistics_cost: float
    risk_cost: float

    def __post_init__(self) -> None:
        if not self.stops:
            raise SolverError("route must serve at least one customer")
        if len(set(self.stops)) != len(self.stops):
            raise SolverError(f"route {self.vehicle_id} repeats a stop")


@dataclass(frozen=True)
class Solution:
    routes: tuple[Route, ...]
    alpha: float
    logistics_total: float
    risk_total: float
    objective: float
    engine: str = "exact"


@dataclass(frozen=True)
class HeuristicParams:
    """Settings for the heuristic engine.

    ``two_opt`` and ``cross_moves`` gate the intra-route and cross-route
    polishing phases.  ``restarts`` > 0 reruns construction with savings
    values jittered by a seeded RNG and keeps the best outcome; the
    default is a single deterministic pass.
    """

    two_opt: bool = True
    cross_moves: bool = True
    max_two_opt_passes: int = 50
    restarts: int = 0
    seed: int = 0


def weighted_arc_cost(arc: Arc, alpha: float) -> float:
    """Blend one arc's logistics and risk costs at safety level ``alpha``."""
    if not 0.0 <= alpha <= 1.0:
        raise SolverError(f"alpha {alpha} outside [0, 1]")
    if arc.logistics_cost is None:
        raise SolverError(f"arc {arc.from_node}->{arc.to_node}: logistics cost unset")
    if arc.risk_cost is None:
        raise SolverError(f"arc {arc.from_node}->{arc.to_node}: risk cost unset")
    return (1.0 - alpha) * arc.logistics_cost + alpha * arc.risk_cost


# ---------------------------------------------------------------------------
# cost model
# ---------------------------------------------------------------------------

class _CostModel:
    """Dense cost matrices over depot (index 0) and customers (1..n)."""

    def __init__(self, instance: Instance, alpha: float):
        if not 0.0 <= alpha <= 1.0:
            raise SolverError(f"alpha {alpha} outside [0, 1]")
        self.instance = instance
        self.alpha = alpha
        self.customers = instance.customers
        self.node_ids = [instance.depot] + self.customers
        n1 = len(self.node_ids)
        self.C = np.zeros((n1, n1))
        self.R = np.zeros((n1, n1))
        for i, a in enumerate(self.node_ids):
            for j, b in enumerate(self.node_ids):
                if i == j:
                    continue
                arc = instance.arcs.arc(a, b)
                if arc.logistics_cost is None or arc.risk_cost is None:
                    raise SolverError(f"arc {a}->{b}: costs unset (run the risk pipeline first)")
                self.C[i, j] = arc.logistics_cost
                self.R[i, j] = arc.risk_cost
        self.W = (1.0 - alpha) * self.C + alpha * self.R
        self.symmetric = np.array_equal(self.C, self.C.T) and np.array_equal(self.R, self.R.T)
        self.demands = [instance.demands[c] for c in self.customers]

    def route_totals(self, stops_idx: list[int]) -> tuple[float, float]:
        """Recompute (logistics, risk) of depot -> stops -> depot, in order."""
        c = self.C[0, stops_idx[0]] + self.C[stops_idx[-1], 0]
        r = self.R[0, stops_idx[0]] + self.R[stops_idx[-1], 0]
        for a, b in zip(stops_idx, stops_idx[1:]):
            c += self.C[a, b]
            r += self.R[a, b]
        return c, r


def _check_feasibility(instance: Instance, exactly_k: bool) -> None:
    n = len(instance.customers)
    k, q = instance.vehicle_count, instance.capacity
    if instance.total_demand > k * q + _EPS:
        raise SolverError(
            f"infeasible: total demand {instance.total_demand} exceeds fleet capacity {k} x {q}"
        )
    for c in instance.customers:
        if instance.demands[c] > q + _EPS:
            raise SolverError(
                f"infeasible: customer {c!r} demand {instance.demands[c]} exceeds capacity {q}"
            )
    if exactly_k and n < k:
        raise SolverError(
            f"infeasible: {n} customers cannot fill {k} non-empty routes "
            f"(nearest feasible: {n} vehicles, or allow idle vehicles)"
        )


def _assemble(
    model: _CostModel, blocks_paths: list[list[int]], engine: str
) -> Solution:
    """Canonicalize route direction and order, then build the Solution."""
    routes: list[tuple[int, ...]] = []
    for path in blocks_paths:
        if model.symmetric and len(path) > 1 and path[-1] < path[0]:
            path = path[::-1]
        routes.append(tuple(path))
    routes.sort()

    out: list[Route] = []
    logistics = 0.0
    risk = 0.0
    for vid, path in enumerate(routes, start=1):
        c, r = model.route_totals(list(path))
        load = sum(model.demands[i - 1] for i in path)
        out.append(
            Route(
                vehicle_id=vid,
                stops=tuple(model.node_ids[i] for i in path),
                load=load,
                logistics_cost=c,
                risk_cost=r,
            )
        )
        logistics += c
        risk += r
    return Solution(
        routes=tuple(out),
        alpha=model.alpha,
        logistics_total=logistics,
        risk_total=risk,
        objective=(1.0 - model.alpha) * logistics + model.alpha * risk,
        engine=engine,
    )


# ---------------------------------------------------------------------------
# exact engine
# ---------------------------------------------------------------------------

def _subset_route_dp(model: _CostModel, feasible: list[bool]):
    """Optimal open path depot -> subset -> (last customer) for every
    capacity-feasible subset.

    Returns ``dp`` where ``dp[mask][last]`` is ``(w, r, c, parent_last)``
    with customers numbered 0..n-1 (matrix index minus one).  Cost tuples
    compare lexicographically, which realizes the risk-then-logistics
    tie-break.
    """
    n = len(model.customers)
    W, R, C = model.W, model.R, model.C
    dp: list[dict[int, tuple[float, float, float, int]]] = [dict() for _ in range(1 << n)]
    for i in range(n):
        dp[1 << i][i] = (W[0, i + 1], R[0, i + 1], C[0, i + 1], -1)
    for mask in range(1, 1 << n):
        if not feasible[mask] or not dp[mask]:
            continue
        entries = dp[mask]
        for last, (w, r, c, _) in entries.items():
            li = last + 1
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                new_mask = mask | bit
                if not feasible[new_mask]:
                    continue
                cand = (w + W[li, j + 1], r + R[li, j + 1], c + C[li, j + 1], last)
                cur = dp[new_mask].get(j)
                if cur is None or cand[:3] < cur[:3]:
                    dp[new_mask][j] = cand
    return dp


def _close_routes(model: _CostModel, dp, feasible: list[bool]):
    """Best closed route per feasible subset: path DP plus return leg."""
    n = len(model.customers)
    W, R, C = model.W, model.R, model.C
    route_cost: dict[int, tuple[float, float, float]] = {}
    route_last: dict[int, int] = {}
    for mask in range(1, 1 << n):
        if not feasible[mask] or not dp[mask]:
            continue
        best = None
        best_last = -1
        for last in sorted(dp[mask]):
            w, r, c, _ = dp[mask][last]
            li = last + 1
            cand = (w + W[li, 0], r + R[li, 0], c + C[li, 0])
            if best is None or cand < best:
                best = cand
                best_last = last
        route_cost[mask] = best
        route_last[mask] = best_last
    return route_cost, route_last


def _reconstruct_path(dp, mask: int, last: int) -> list[int]:
    """Follow parent pointers back to the depot; returns matrix indices."""
    path: list[int] = []
    while last >= 0:
        path.append(last + 1)
        _, _, _, parent = dp[mask][last]
        mask ^= 1 << last
        last = parent
    path.reverse()
    return path


def solve_exact(instance: Instance, alpha: float, allow_idle_vehicles: bool = False) -> Solution:
    """Globally optimal solution for the alpha-weighted objective.

    Every vehicle serves at least one customer (exactly K routes) unless
    ``allow_idle_vehicles`` permits fewer.  Limited to
    ``EXACT_SIZE_LIMIT`` customers.
    """
    n = len(instance.customers)
    if n > EXACT_SIZE_LIMIT:
        raise SolverError(f"exact engine limited to {EXACT_SIZE_LIMIT} customers, got {n}")
    _check_feasibility(instance, exactly_k=not allow_idle_vehicles)
    model = _CostModel(instance, alpha)
    K = instance.vehicle_count

    demands = model.demands
    feasible = [False] * (1 << n)
    feasible[0] = True
    subset_demand = [0.0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        subset_demand[mask] = subset_demand[mask ^ (1 << low)] + demands[low]
        feasible[mask] = subset_demand[mask] <= instance.capacity + _EPS

    dp = _subset_route_dp(model, feasible)
    route_cost, route_last = _close_routes(model, dp, feasible)

    full = (1 << n) - 1
    # part[k][mask] = (cost tuple, first block) splitting mask into k routes.
    part: list[dict[int, tuple[tuple[float, float, float], int]]] = [dict() for _ in range(K + 1)]
    part[1] = {mask: (cost, mask) for mask, cost in route_cost.items()}
    for k in range(2, K + 1):
        for mask in range(1, full + 1):
            if mask.bit_count() < k:
                continue
            anchor = mask & -mask
            best = None
            best_block = 0
            sub = mask
            while sub:
                if sub & anchor:
                    block_cost = route_cost.get(sub)
                    rest = part[k - 1].get(mask ^ sub) if block_cost is not None else None
                    if rest is not None:
                        cand = tuple(a + b for a, b in zip(block_cost, rest[0]))
                        if best is None or cand < best:
                            best = cand
                            best_block = sub
                sub = (sub - 1) & mask
            if best is not None:
                part[k][mask] = (best, best_block)

    if allow_idle_vehicles:
        options = [(part[k][full], k) for k in range(1, K + 1) if full in part[k]]
        if not options:
            raise SolverError("infeasible: no capacity-feasible split of the customers")
        (_, _), chosen_k = min(options)
        blocks_k = chosen_k
    elif full in part[K]:
        blocks_k = K
    else:
        raise SolverError(
            f"infeasible: no capacity-feasible split into exactly {K} routes"
        )

    blocks: list[int] = []
    mask = full
    for k in range(blocks_k, 0, -1):
        _, block = part[k][mask]
        blocks.append(block)
        mask ^= block

    paths = [_reconstruct_path(dp, b, route_last[b]) for b in blocks]
    return _assemble(model, paths, engine="exact")


# ---------------------------------------------------------------------------
# heuristic engine
# ---------------------------------------------------------------------------

def _savings_construct(
    model: _CostModel, K: float, capacity: float, jitter: np.ndarray | None
) -> list[list[int]]:
    """Parallel savings merge down to exactly K routes (matrix indices)."""
    n = len(model.customers)
    W = model.W
    routes: dict[int, list[int]] = {i: [i + 1] for i in range(n)}
    loads: dict[int, float] = {i: model.demands[i] for i in range(n)}
    owner: dict[int, int] = {i + 1: i for i in range(n)}

    savings = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                s = W[i, 0] + W[0, j] - W[i, j]
                savings.append((s, i, j))
    if jitter is not None:
        savings = [(s + jit, i, j) for (s, i, j), jit in zip(savings, jitter)]
    savings.sort(key=lambda t: (-t[0], t[1], t[2]))

    def try_merge(i: int, j: int) -> bool:
        ra, rb = owner[i], owner[j]
        if ra == rb:
            return False
        a, b = routes[ra], routes[rb]
        if loads[ra] + loads[rb] > capacity + _EPS:
            return False
        if a[-1] != i or b[0] != j:
            return False
        routes[ra] = a + b
        loads[ra] += loads[rb]
        for node in b:
            owner[node] = ra
        del routes[rb], loads[rb]
        return True

    changed = True
    while changed and len(routes) > K:
        changed = False
        for s, i, j in savings:
            if len(routes) <= K:
                break
            if try_merge(i, j):
                changed = True

    # Savings alone may stall above K: force the cheapest concatenations.
    while len(routes) > K:
        best = None
        keys = sorted(routes)
        for ra, rb in itertools.permutations(keys, 2):
            if loads[ra] + loads[rb] > capacity + _EPS:
                continue
            a, b = routes[ra], routes[rb]
            delta = W[a[-1], b[0]] - W[a[-1], 0] - W[0, b[0]]
            if best is None or (delta, ra, rb) < best:
                best = (delta, ra, rb)
        if best is None:
            # Greedy merging painted itself into a corner; repack from scratch.
            packed = _exact_k_pack(model.demands, int(K), capacity)
            if packed is None:
                raise SolverError(
                    f"cannot reach exactly {int(K)} routes: no capacity-feasible merge "
                    f"remains at {len(routes)} routes (nearest feasible vehicle count: {len(routes)})"
                )
            return [_nearest_neighbor_order(model, group) for group in packed]
        _, ra, rb = best
        routes[ra] = routes[ra] + routes[rb]
        loads[ra] += loads[rb]
        for node in routes[rb]:
            owner[node] = ra
        del routes[rb], loads[rb]

    return [routes[k] for k in sorted(routes)]


def _exact_k_pack(demands: list[float], K: int, capacity: float) -> list[list[int]] | None:
    """Best-fit-decreasing into exactly K non-empty groups (matrix indices).

    Each group is seeded with one of the K largest demands so no group
    stays empty.  Returns None when some demand fits nowhere.
    """
    order = sorted(range(len(demands)), key=lambda i: (-demands[i], i))
    groups = [[order[k]] for k in range(K)]
    loads = [demands[order[k]] for k in range(K)]
    for i in order[K:]:
        fit = None
        for g in range(K):
            if loads[g] + demands[i] <= capacity + _EPS:
                key = (-loads[g], g)
                if fit is None or key < fit[0]:
                    fit = (key, g)
        if fit is None:
            return None
        g = fit[1]
        groups[g].append(i)
        loads[g] += demands[i]
    return [[i + 1 for i in group] for group in groups]


def _random_k_pack(
    demands: list[float], K: int, capacity: float, rng: np.random.Generator
) -> list[list[int]] | None:
    """Random capacity-feasible split into exactly K non-empty groups.

    Groups are seeded with the K largest demands so none stays empty;
    the rest go to a uniformly chosen group among those with room.
    Returns None when a demand fits nowhere.
    """
    order = sorted(range(len(demands)), key=lambda i: (-demands[i], i))
    groups = [[order[k]] for k in range(K)]
    loads = [demands[order[k]] for k in range(K)]
    rest = list(order[K:])
    rng.shuffle(rest)
    for i in rest:
        fits = [g for g in range(K) if loads[g] + demands[i] <= capacity + _EPS]
        if not fits:
            return None
        g = fits[int(rng.integers(len(fits)))]
        groups[g].append(i)
        loads[g] += demands[i]
    return [[i + 1 for i in group] for group in groups]


def _nearest_neighbor_order(model: _CostModel, group: list[int]) -> list[int]:
    """Order one group of customer matrix indices greedily from the depot."""
    W = model.W
    remaining = sorted(group)
    path: list[int] = []
    here = 0
    while remaining:
        nxt = min(remaining, key=lambda j: (W[here, j], j))
        path.append(nxt)
        remaining.remove(nxt)
        here = nxt
    return path


def _two_opt(model: _CostModel, path: list[int], max_passes: int) -> list[int]:
    """First-improvement 2-opt on one route (depot fixed at both ends)."""
    W = model.W
    best = list(path)
    for _ in range(max_passes):
        improved = False
        m = len(best)
        for i in range(m - 1):
            for j in range(i + 1, m):
                prev_node = best[i - 1] if i > 0 else 0
                next_node = best[j + 1] if j + 1 < m else 0
                seg = best[i : j + 1]
                old = W[prev_node, seg[0]] + W[seg[-1], next_node]
                new = W[prev_node, seg[-1]] + W[seg[0], next_node]
                if not model.symmetric:
                    old += sum(W[a, b] for a, b in zip(seg, seg[1:]))
                    new += sum(W[a, b] for a, b in zip(seg[::-1], seg[::-1][1:]))
                if new < old - _EPS:
                    best[i : j + 1] = seg[::-1]
                    improved = True
        if not improved:
            break
    return best


def _path_cost(model: _CostModel, path: list[int]) -> float:
    """Weighted cost of one route including both depot legs."""
    W = model.W
    total = W[0, path[0]] + W[path[-1], 0]
    for a, b in zip(path, path[1:]):
        total += W[a, b]
    return float(total)


def _best_cross_move(
    model: _CostModel, paths: list[list[int]], capacity: float
) -> tuple[int, int, list[int], list[int]] | None:
    """Best strictly improving relocate or swap between two routes.

    Returns (route a, route b, new path a, new path b) or None; ties
    break on a fixed lexicographic key so polishing is deterministic.
    """
    demands = model.demands
    loads = [sum(demands[i - 1] for i in p) for p in paths]
    base = [_path_cost(model, p) for p in paths]
    best_key: tuple | None = None
    best_move: tuple[int, int, list[int], list[int]] | None = None

    def consider(key: tuple, move: tuple[int, int, list[int], list[int]]) -> None:
        nonlocal best_key, best_move
        if best_key is None or key < best_key:
            best_key, best_move = key, move

    for a, pa in enumerate(paths):
        for b, pb in enumerate(paths):
            if a == b:
                continue
            # Relocate one customer from a into the best slot of b.
            if len(pa) > 1:
                for xi, x in enumerate(pa):
                    if loads[b] + demands[x - 1] > capacity + _EPS:
                        continue
                    ra = pa[:xi] + pa[xi + 1 :]
                    ca = _path_cost(model, ra)
                    for pos in range(len(pb) + 1):
                        rb = pb[:pos] + [x] + pb[pos:]
                        delta = ca + _path_cost(model, rb) - base[a] - base[b]
                        if delta < -_EPS:
                            consider((delta, 0, a, b, xi, pos), (a, b, ra, rb))
            if a >= b:
                continue
            # Swap one customer of a with one of b, positions kept.
            for xi, x in enumerate(pa):
                for yi, y in enumerate(pb):
                    dx, dy = demands[x - 1], demands[y - 1]
                    if loads[a] - dx + dy > capacity + _EPS:
                        continue
                    if loads[b] - dy + dx > capacity + _EPS:
                        continue
                    ra = pa[:xi] + [y] + pa[xi + 1 :]
                    rb = pb[:yi] + [x] + pb[yi + 1 :]
                    delta = _path_cost(model, ra) + _path_cost(model, rb) - base[a] - base[b]
                    if delta < -_EPS:
                        consider((delta, 1, a, b, xi, yi), (a, b, ra, rb))
    return best_move


def _polish(model: _CostModel, paths: list[list[int]], capacity: float, params: HeuristicParams) -> list[list[int]]:
    """Interleave intra-route 2-opt with cross-route relocates and swaps.

    Every cross move strictly lowers the weighted total and 2-opt never
    raises it, so the loop terminates; the pass bound caps the worst case.
    """
    for _ in range(max(params.max_two_opt_passes, 1)):
        if params.two_opt:
            paths = [_two_opt(model, p, params.max_two_opt_passes) for p in paths]
        if not params.cross_moves or len(paths) < 2:
            break
        move = _best_cross_move(model, paths, capacity)
        if move is None:
            break
        a, b, ra, rb = move
        paths[a], paths[b] = ra, rb
    return paths


def solve_heuristic(
    instance: Instance, alpha: float, params: HeuristicParams = HeuristicParams()
) -> Solution:
    """Feasible solution from savings construction plus local search.

    Polishing runs intra-route 2-opt and cross-route relocate/swap
    moves.  Always produces exactly K non-empty routes or raises.
    Deterministic for fixed ``params``.
    """
    _check_feasibility(instance, exactly_k=True)
    model = _CostModel(instance, alpha)
    K = instance.vehicle_count

    def one_pass(jitter: np.ndarray | None) -> Solution:
        paths = _savings_construct(model, K, instance.capacity, jitter)
        paths = _polish(model, paths, instance.capacity, params)
        return _assemble(model, paths, engine="heuristic")

    best = one_pass(None)
    if params.restarts > 0:
        n = len(model.customers)
        rng = np.random.Generator(np.random.PCG64(params.seed))
        scale = 0.05 * float(np.mean(model.W[model.W > 0])) if n > 1 else 0.0

        def consider(cand: Solution) -> None:
            nonlocal best
            key = (cand.objective, cand.risk_total, cand.logistics_total)
            if key < (best.objective, best.risk_total, best.logistics_total):
                best = cand

        for _ in range(params.restarts):
            consider(one_pass(rng.normal(0.0, scale, size=n * (n - 1))))
            # Jitter only shakes the merge order; a random repack can land
            # in partition basins the savings construction never visits.
            packed = _random_k_pack(model.demands, K, instance.capacity, rng)
            if packed is not None:
                paths = [_nearest_neighbor_order(model, group) for group in packed]
                paths = _polish(model, paths, instance.capacity, params)
                consider(_assemble(model, paths, engine="heuristic"))
    return best


# ---------------------------------------------------------------------------
# independent validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ValidationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[ValidationCheck]:
        return [c for c in self.checks if not c.passed]


def detect_subtours(
    edge_selection: Mapping[int, Iterable[tuple[str, str]]], instance: Instance
) -> list[set[str]]:
    """Find customer-only cycles in a per-vehicle directed arc selection.

    A selection that encodes depot-rooted paths only yields an empty list.
    Raises on selections where some customer's in- and out-degrees differ.
    """
    depot = instance.depot
    subtours: list[set[str]] = []
    for vehicle in sorted(edge_selection):
        arcs = list(edge_selection[vehicle])
        out_deg: dict[str, int] = {}
        in_deg: dict[str, int] = {}
        succ: dict[str, list[str]] = {}
        for a, b in arcs:
            out_deg[a] = out_deg.get(a, 0) + 1
            in_deg[b] = in_deg.get(b, 0) + 1
            succ.setdefault(a, []).append(b)
        for node in set(out_deg) | set(in_deg):
            if node != depot and out_deg.get(node, 0) != in_deg.get(node, 0):
                raise SolverError(
                    f"vehicle {vehicle}: degree-inconsistent selection at {node!r}"
                )
        for targets in succ.values():
            targets.sort()

        # Everything undirected-reachable from the depot is path structure;
        # remaining edges form closed cycles among customers.
        adj: dict[str, set[str]] = {}
        for a, b in arcs:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        reached = set()
        stack = [depot]
        while stack:
            node = stack.pop()
            if node in reached:
                continue
            reached.add(node)
            stack.extend(adj.get(node, ()))

        remaining = {a: list(ts) for a, ts in succ.items() if a not in reached}
        for start in sorted(remaining):
            while remaining.get(start):
                cycle = {start}
                node = remaining[start].pop(0)
                while node != start:
                    cycle.add(node)
                    node = remaining[node].pop(0)
                subtours.append(cycle)
    return subtours


def routes_to_edge_selection(solution: Solution, instance: Instance) -> dict[int, list[tuple[str, str]]]:
    """Expand route stop sequences into per-vehicle directed depot-rooted arcs."""
    depot = instance.depot
    selection: dict[int, list[tuple[str, str]]] = {}
    for route in solution.routes:
        seq = [depot, *route.stops, depot]
        selection[route.vehicle_id] = list(zip(seq, seq[1:]))
    return selection


def validate_solution(
    instance: Instance, solution: Solution, allow_idle_vehicles: bool = False
) -> ValidationReport:
    """Re-derive every constraint family from instance data and report per-check results."""
    checks: list[ValidationCheck] = []

    seen: dict[str, int] = {}
    for route in solution.routes:
        for stop in route.stops:
            seen[stop] = seen.get(stop, 0) + 1
    missing = [c for c in instance.customers if c not in seen]
    duplicated = sorted(c for c, k in seen.items() if k > 1)
    unknown = sorted(c for c in seen if c not in instance.customers)
    cov_ok = not missing and not duplicated and not unknown
    checks.append(
        ValidationCheck(
            "customer_coverage",
            cov_ok,
            "" if cov_ok else f"missing={missing} duplicated={duplicated} unknown={unknown}",
        )
    )

    cap_bad = []
    for route in solution.routes:
        true_load = sum(instance.demands.get(s, 0.0) for s in route.stops)
        if true_load > instance.capacity + _EPS or abs(true_load - route.load) > _EPS:
            cap_bad.append(
                f"vehicle {route.vehicle_id}: load {true_load} (declared {route.load}, "
                f"capacity {instance.capacity})"
            )
    checks.append(ValidationCheck("capacity", not cap_bad, "; ".join(cap_bad)))

    k = instance.vehicle_count
    count_ok = len(solution.routes) <= k if allow_idle_vehicles else len(solution.routes) == k
    nonempty = all(route.stops for route in solution.routes)
    detail = f"{len(solution.routes)} routes for {k} vehicles"
    checks.append(ValidationCheck("depot_departure", count_ok and nonempty, detail))
    checks.append(ValidationCheck("depot_arrival", count_ok and nonempty, detail))

    flow_bad = []
    for route in solution.routes:
        seq = [instance.depot, *route.stops, instance.depot]
        if len(set(route.stops)) != len(route.stops):
            flow_bad.append(f"vehicle {route.vehicle_id}: repeated stop")
        for a, b in zip(seq, seq[1:]):
            if (a, b) not in instance.arcs.arcs:
                flow_bad.append(f"vehicle {route.vehicle_id}: no arc {a}->{b}")
    checks.append(ValidationCheck("flow_conservation", not flow_bad, "; ".join(flow_bad)))

    try:
        cycles = detect_subtours(routes_to_edge_selection(solution, instance), instance)
        checks.append(
            ValidationCheck(
                "subtour_free", not cycles, "" if not cycles else f"subtours: {cycles}"
            )
        )
    except SolverError as exc:
        checks.append(ValidationCheck("subtour_free", False, str(exc)))

    obj_bad: list[str] = []
    logistics = 0.0
    risk = 0.0
    try:
        for route in solution.routes:
            seq = [instance.depot, *route.stops, instance.depot]
            c = sum(instance.arcs.arc(a, b).logistics_cost for a, b in zip(seq, seq[1:]))
            r = sum(instance.arcs.arc(a, b).risk_cost for a, b in zip(seq, seq[1:]))
            logistics += c
            risk += r
            if abs(c - route.logistics_cost) > _EPS or abs(r - route.risk_cost) > _EPS:
                obj_bad.append(f"vehicle {route.vehicle_id}: per-route costs drift")
    except (KeyError, TypeError):
        obj_bad.append("arc costs unavailable for recomputation")
    else:
        expected = (1.0 - solution.alpha) * logistics + solution.alpha * risk
        if abs(logistics - solution.logistics_total) > _EPS:
            obj_bad.append(
                f"logistics total {solution.logistics_total} != recomputed {logistics}"
            )
        if abs(risk - solution.risk_total) > _EPS:
            obj_bad.append(f"risk total {solution.risk_total} != recomputed {risk}")
        if abs(expected - solution.objective) > _EPS:
            obj_bad.append(f"objective {solution.objective} != recomputed {expected}")
    checks.append(ValidationCheck("objective", not obj_bad, "; ".join(obj_bad)))

    return ValidationReport(checks=tuple(checks))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def serialize_solution(solution: Solution, wall_ms: int) -> str:
    """Render one solution as stable structured text."""
    lines = [
        f"alpha = {solution.alpha:.4f}",
        f"engine = {solution.engine}",
        f"objective = {solution.objective:.2f}",
        f"logistics_total = {solution.logistics_total:.2f}",
        f"risk_total = {solution.risk_total:.2f}",
        f"wall_ms = {wall_ms}",
    ]
    for route in solution.routes:
        lines += [
            "",
            f"[vehicle {route.vehicle_id}]",
            f"stops = {' -> '.join(route.stops)}",
            f"load = {route.load:g}",
            f"logistics_cost = {route.logistics_cost:.2f}",
            f"risk_cost = {route.risk_cost:.2f}",
        ]
    return "\n".join(lines) + "\n"
