"""Pure-equilibrium analysis for the two-agent first-to-finish game.

Covers the unbiased classification over non-dominated paths, traversal-based
Nash checks for biased agents, closed-form fan thresholds, the dominant-path
reward bound, and the exact computation of all rewards that make a given path
a symmetric equilibrium.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .agents import AgentConfig, RewardTie, TraversalTrace, traverse
from .errors import BiasNotAboveC, NoDominantPath
from .graph import PathRecord, TaskGraph, cheapest_per_length
from .instances import FanSpec
from .intervals import Interval, IntervalSet


@dataclass(frozen=True)
class NondominatedLadder:
    """Per-length cheapest paths that survive dominance filtering.

    Lengths strictly increase and costs strictly decrease along the ladder,
    and the quickest survivor costs at most ``reward`` more than the cheapest
    (winning beats losing).
    """

    paths: tuple[PathRecord, ...]
    reward: Fraction

    def __len__(self) -> int:
        return len(self.paths)

    @property
    def costs(self) -> tuple[Fraction, ...]:
        return tuple(p.cost for p in self.paths)


@dataclass(frozen=True)
class UnbiasedEqReport:
    ladder: NondominatedLadder
    symmetric: tuple[PathRecord, ...]
    asymmetric: tuple[PathRecord, PathRecord] | None
    tie_rule: RewardTie


@dataclass(frozen=True)
class NeCheckResult:
    is_equilibrium: bool
    deviated_at: str | None
    trace: TraversalTrace

    def __bool__(self) -> bool:
        return self.is_equilibrium


@dataclass(frozen=True)
class FanNeThresholds:
    optimal_min_reward: Fraction   # smallest reward putting an equilibrium on the direct path
    longest_max_reward: Fraction   # largest reward keeping an equilibrium on the full delay path


@dataclass(frozen=True)
class DominantPathReward:
    path: PathRecord
    max_edge_cost: Fraction
    reward: Fraction
    agents: int


def nondominated_ladder(graph: TaskGraph, reward: Fraction) -> NondominatedLadder:
    """Filter per-length minima down to the non-dominated ladder.

    A path is dominated when a weakly quicker path is weakly cheaper, or when
    even losing on some path beats winning on it (cost >= cheapest + reward).
    """
    reward = Fraction(reward)
    if reward < 0:
        raise ValueError("reward must be nonnegative")
    by_length = cheapest_per_length(graph)
    survivors: list[PathRecord] = []
    for k in sorted(by_length):
        p = by_length[k]
        if survivors and survivors[-1].cost <= p.cost:
            continue  # quicker survivor is no costlier
        survivors.append(p)
    cheapest = min(p.cost for p in survivors)
    survivors = [p for p in survivors if p.cost < cheapest + reward or p.cost == cheapest]
    return NondominatedLadder(tuple(survivors), reward)


def classify_unbiased(
    graph: TaskGraph, reward: Fraction, tie_rule: RewardTie = RewardTie.SPLIT
) -> UnbiasedEqReport:
    """Classify the pure Nash equilibria of the unbiased game on the ladder."""
    ladder = nondominated_ladder(graph, reward)
    paths = ladder.paths
    reward = ladder.reward
    n = len(paths)
    symmetric: list[PathRecord] = []
    asymmetric: tuple[PathRecord, PathRecord] | None = None

    if tie_rule is RewardTie.FULL:
        symmetric = list(paths)
    elif tie_rule is RewardTie.NONE:
        if n == 1:
            symmetric = [paths[0]]
        elif n == 2:
            asymmetric = (paths[0], paths[1])
    else:  # split
        for i, p in enumerate(paths):
            if i == 0:
                ok = p.cost - paths[-1].cost <= reward / 2
            else:
                ok = paths[i - 1].cost - p.cost >= reward / 2
            if ok:
                symmetric.append(p)
        if n == 2 and paths[0].cost - paths[1].cost == reward / 2:
            asymmetric = (paths[0], paths[1])

    return UnbiasedEqReport(ladder, tuple(symmetric), asymmetric, tie_rule)


def _require_full_path(graph: TaskGraph, q: PathRecord) -> None:
    if q.vertices[0] != graph.source or q.vertices[-1] != graph.sink:
        raise ValueError("path must run from the source to the sink")


def check_symmetric_ne(
    graph: TaskGraph,
    q: PathRecord,
    reward: Fraction,
    bias: Fraction,
    tie_rule: RewardTie = RewardTie.SPLIT,
) -> NeCheckResult:
    """Both agents on q is an equilibrium iff the biased traversal against an
    opponent of q's length, with stay-on-q tie-breaking, reproduces q."""
    _require_full_path(graph, q)
    config = AgentConfig(bias, tie_rule)
    trace = traverse(graph, config, opponent=q.length, reward=Fraction(reward), reference=q)
    if trace.path.vertices == q.vertices:
        return NeCheckResult(True, None, trace)
    walked = trace.path.vertices
    i = next(idx for idx, (a, b) in enumerate(zip(walked, q.vertices)) if a != b)
    return NeCheckResult(False, q.vertices[i - 1], trace)


def fan_ne_thresholds(spec: FanSpec, bias: Fraction) -> FanNeThresholds:
    """Closed-form reward thresholds for equilibria on a fan's extreme paths."""
    bias = Fraction(bias)
    if bias < spec.c:
        raise BiasNotAboveC(f"bias {bias} below growth factor {spec.c}")
    eps = bias - spec.c
    return FanNeThresholds(2 * eps, 2 * eps * spec.c ** (spec.n - 1))


def dominant_path_reward(graph: TaskGraph, bias: Fraction, agents: int = 2) -> DominantPathReward:
    """Reward guaranteeing an equilibrium on the dominant path, if one exists.

    The dominant path must be the uniquely quickest path and cost no more than
    any other path.  With ``agents`` competitors in total the sufficient reward
    is agents * bias * (largest edge cost on the path).
    """
    bias = Fraction(bias)
    if bias < 1:
        raise ValueError("bias must be at least 1")
    if agents < 2:
        raise ValueError("need at least two competing agents")

    counts: dict[str, list[int]] = {v: [0] * len(graph.vertices) for v in graph.vertices}
    counts[graph.sink][0] = 1
    for v in reversed(graph.topo_order):
        row = counts[v]
        for e in graph.adjacency[v]:
            succ = counts[e.head]
            for k in range(1, len(row)):
                row[k] += succ[k - 1]
    from_source = counts[graph.source]
    quickest = next((k for k in range(len(from_source)) if from_source[k] > 0), None)
    assert quickest is not None
    if from_source[quickest] != 1:
        raise NoDominantPath(f"{from_source[quickest]} distinct paths share the minimum length")

    seq = [graph.source]
    remaining = quickest
    while seq[-1] != graph.sink:
        for e in graph.successors(seq[-1]):
            if counts[e.head][remaining - 1] > 0:
                seq.append(e.head)
                remaining -= 1
                break
    path = PathRecord.from_vertices(graph, seq)
    if path.cost != graph.cheapest_cost(graph.source):
        raise NoDominantPath("the uniquely quickest path is not a cheapest path")
    max_edge = max(graph.edge_cost(u, v) for u, v in zip(seq, seq[1:]))
    return DominantPathReward(path, max_edge, agents * bias * max_edge, agents)


# Exact feasible-reward computation.
#
# Walking q with a decrementing hop budget, the perceived continuation value
# from any vertex is the lower envelope of up to three lines in the reward r
# (slopes 0, -1/2, -1 for the lose/tie/win cases).  Between envelope
# breakpoints both sides of the stay condition are linear, so each piece
# contributes one closed subinterval of feasible rewards.

_LOSE, _TIE, _WIN = Fraction(0), Fraction(-1, 2), Fraction(-1)


def _case_lines(graph: TaskGraph, v: str, budget: int) -> list[tuple[Fraction, Fraction]]:
    """(intercept, slope) lines whose lower envelope is the continuation value."""
    table = graph.hop_table(v)
    lines = [(table.cost_any(), _LOSE)]
    tie_cost = table.cost_at_most(budget)
    if tie_cost is not None:
        lines.append((tie_cost, _TIE))
    win_cost = table.cost_fewer(budget)
    if win_cost is not None:
        lines.append((win_cost, _WIN))
    return lines


def _crossings(lines: list[tuple[Fraction, Fraction]]) -> set[Fraction]:
    points: set[Fraction] = set()
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            (a1, s1), (a2, s2) = lines[i], lines[j]
            if s1 == s2:
                continue
            r = (a1 - a2) / (s2 - s1)
            if r > 0:
                points.add(r)
    return points


def _envelope_at(lines: list[tuple[Fraction, Fraction]], r: Fraction) -> tuple[Fraction, Fraction]:
    """Active (intercept, slope) of the lower envelope at r (no interior ties)."""
    return min(lines, key=lambda line: (line[0] + line[1] * r, line[1]))


def _prefer_edge_rewards(
    stay_lines: list[tuple[Fraction, Fraction]],
    dev_lines: list[tuple[Fraction, Fraction]],
    margin: Fraction,
    breakpoints: set[Fraction] | None,
) -> IntervalSet:
    """All r >= 0 where dev_envelope(r) - stay_envelope(r) >= margin."""
    points = sorted({Fraction(0)} | _crossings(stay_lines) | _crossings(dev_lines))
    if breakpoints is not None:
        breakpoints.update(points)
    pieces: list[tuple[Fraction, Fraction | None]] = [
        (points[i], points[i + 1]) for i in range(len(points) - 1)
    ]
    pieces.append((points[-1], None))

    feasible: list[Interval | None] = []
    for lo, hi in pieces:
        probe = lo + 1 if hi is None else (lo + hi) / 2
        a_c, s_c = _envelope_at(stay_lines, probe)
        a_d, s_d = _envelope_at(dev_lines, probe)
        intercept = a_d - a_c - margin
        slope = s_d - s_c
        if slope == 0:
            if intercept >= 0:
                feasible.append(Interval(lo, hi))
            continue
        threshold = -intercept / slope
        if slope > 0:  # condition holds for r >= threshold
            cut_lo = max(lo, threshold)
            if hi is None or cut_lo <= hi:
                feasible.append(Interval(cut_lo, hi))
        else:  # holds for r <= threshold
            if threshold >= lo:
                cut_hi = threshold if hi is None else min(hi, threshold)
                feasible.append(Interval(lo, cut_hi))
    return IntervalSet.from_intervals(feasible)


def feasible_rewards(
    graph: TaskGraph,
    q: PathRecord,
    bias: Fraction,
    breakpoints: set[Fraction] | None = None,
) -> IntervalSet:
    """The exact set of rewards making q a symmetric Nash equilibrium.

    Intersects, over every edge (u, v) of q and every deviation (u, v'), the
    rewards under which the agent weakly prefers staying.  ``breakpoints``
    collects every piecewise-linear switch point encountered, for callers that
    cross-check the result by sweeping.
    """
    _require_full_path(graph, q)
    bias = Fraction(bias)
    result = IntervalSet.nonnegative()
    budget = q.length
    for u, v in zip(q.vertices, q.vertices[1:]):
        budget -= 1
        stay_lines = _case_lines(graph, v, budget)
        stay_edge_cost = graph.edge_cost(u, v)
        for e in graph.successors(u):
            if e.head == v:
                continue
            dev_lines = _case_lines(graph, e.head, budget)
            margin = bias * (stay_edge_cost - e.cost)
            per_deviation = _prefer_edge_rewards(stay_lines, dev_lines, margin, breakpoints)
            result = result.intersect(per_deviation)
            if result.is_empty and breakpoints is None:
                return result
    return result


def min_reward_for_ne(graph: TaskGraph, q: PathRecord, bias: Fraction) -> Fraction | None:
    """Smallest feasible reward for an equilibrium on q, or None if impossible."""
    return feasible_rewards(graph, q, bias).min_point()


def algorithm_breakpoints(graph: TaskGraph, q: PathRecord, bias: Fraction) -> tuple[Fraction, ...]:
    """All envelope switch points plus the feasible-set endpoints, sorted."""
    points: set[Fraction] = set()
    feasible = feasible_rewards(graph, q, bias, breakpoints=points)
    for interval in feasible.intervals:
        points.add(interval.lo)
        if interval.hi is not None:
            points.add(interval.hi)
    return tuple(sorted(points))
