"""Traversal semantics of naive present-biased agents.

An agent at u weighing a move to v perceives cost b*c(u,v) plus the best true
continuation cost from v, net of the first-to-finish reward the completed walk
would earn against an opponent committed to a path of known length.  Only the
opponent's length matters for the reward, so the opponent is summarized by it.

The reward bucket of a continuation with j further edges, after the agent has
walked ``steps`` edges and would take one more, compares steps+1+j against the
opponent length k: win below, tie at equality, lose above.  The minimum over
continuations therefore reduces to three hop-bounded cheapest costs, which is
what :func:`perceived_cost` evaluates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import ZeroOptimalCost
from .graph import PathRecord, TaskGraph


class RewardTie(enum.Enum):
    """Reward paid when both agents finish simultaneously."""

    SPLIT = "split"  # each gets r/2
    FULL = "full"    # each gets r
    NONE = "none"    # neither gets anything

    def tie_amount(self, reward: Fraction) -> Fraction:
        if self is RewardTie.SPLIT:
            return reward / 2
        if self is RewardTie.FULL:
            return reward
        return Fraction(0)


@dataclass(frozen=True)
class AgentConfig:
    bias: Fraction
    reward_tie: RewardTie = RewardTie.SPLIT

    def __post_init__(self) -> None:
        object.__setattr__(self, "bias", Fraction(self.bias))
        if self.bias < 1:
            raise ValueError("bias must be at least 1")


@dataclass(frozen=True)
class TraversalState:
    vertex: str
    steps_taken: int
    prefix: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.prefix and (self.prefix[-1] != self.vertex or len(self.prefix) - 1 != self.steps_taken):
            raise ValueError("prefix must end at the current vertex")

    @classmethod
    def start(cls, graph: TaskGraph) -> "TraversalState":
        return cls(graph.source, 0, (graph.source,))


@dataclass(frozen=True)
class TraversalStep:
    at: str
    chose: str
    perceived: Fraction
    alternatives: tuple[tuple[str, Fraction], ...]  # non-chosen successors and their costs

    @property
    def runner_up(self) -> tuple[str, Fraction] | None:
        return min(self.alternatives, key=lambda a: a[1]) if self.alternatives else None

    def to_json_dict(self) -> dict:
        return {
            "at": self.at,
            "chose": self.chose,
            "perceived": str(self.perceived),
            "alternatives": [{"vertex": v, "perceived": str(c)} for v, c in self.alternatives],
        }


@dataclass(frozen=True)
class TraversalTrace:
    path: PathRecord
    steps: tuple[TraversalStep, ...]

    def to_json_dict(self) -> dict:
        return {
            "path": list(self.path.vertices),
            "cost": str(self.path.cost),
            "length": self.path.length,
            "steps": [s.to_json_dict() for s in self.steps],
        }


def perceived_cost(
    graph: TaskGraph,
    state: TraversalState,
    successor: str,
    config: AgentConfig,
    opponent_length: int | None = None,
    reward: Fraction = Fraction(0),
) -> Fraction:
    """Perceived cost of stepping to ``successor``, per the three-case reduction."""
    reward = Fraction(reward)
    if reward < 0:
        raise ValueError("reward must be nonnegative")
    biased_edge = config.bias * graph.edge_cost(state.vertex, successor)
    table = graph.hop_table(successor)
    best_any = table.cost_any()
    if opponent_length is None:
        return biased_edge + best_any
    budget = opponent_length - state.steps_taken - 1  # edges left to tie the opponent
    candidates = [best_any]
    tie_cost = table.cost_at_most(budget)
    if tie_cost is not None:
        candidates.append(tie_cost - config.reward_tie.tie_amount(reward))
    win_cost = table.cost_fewer(budget)
    if win_cost is not None:
        candidates.append(win_cost - reward)
    return biased_edge + min(candidates)


def step(
    graph: TaskGraph,
    state: TraversalState,
    config: AgentConfig,
    opponent_length: int | None = None,
    reward: Fraction = Fraction(0),
    reference_next: str | None = None,
) -> tuple[str, list[tuple[str, Fraction]]]:
    """Pick the successor with minimal perceived cost.

    Ties prefer ``reference_next`` when given (the agent stays on a path it is
    being tested against), otherwise the earliest vertex in graph order.
    """
    scored = [
        (e.head, perceived_cost(graph, state, e.head, config, opponent_length, reward))
        for e in graph.successors(state.vertex)
    ]
    if not scored:
        raise ValueError(f"vertex {state.vertex} has no successor")
    best = min(cost for _, cost in scored)
    choices = [v for v, cost in scored if cost == best]
    if reference_next is not None and reference_next in choices:
        chosen = reference_next
    else:
        chosen = min(choices, key=graph.index.__getitem__)
    return chosen, scored


def traverse(
    graph: TaskGraph,
    config: AgentConfig,
    opponent: PathRecord | int | None = None,
    reward: Fraction = Fraction(0),
    reference: PathRecord | None = None,
) -> TraversalTrace:
    """Walk from source to sink, re-deciding with fresh bias at every vertex."""
    opponent_length = opponent.length if isinstance(opponent, PathRecord) else opponent
    prefix = [graph.source]
    log: list[TraversalStep] = []
    on_reference = reference is not None
    while prefix[-1] != graph.sink:
        if len(prefix) > len(graph.vertices):  # pragma: no cover - DAG guarantees progress
            raise AssertionError("traversal failed to terminate")
        state = TraversalState(prefix[-1], len(prefix) - 1, tuple(prefix))
        ref_next = None
        if on_reference and len(prefix) < len(reference.vertices):
            ref_next = reference.vertices[len(prefix)]
        chosen, scored = step(graph, state, config, opponent_length, reward, ref_next)
        perceived = next(cost for v, cost in scored if v == chosen)
        alternatives = tuple(sorted(
            ((v, cost) for v, cost in scored if v != chosen),
            key=lambda a: graph.index[a[0]],
        ))
        log.append(TraversalStep(state.vertex, chosen, perceived, alternatives))
        if on_reference and chosen != ref_next:
            on_reference = False
        prefix.append(chosen)
    return TraversalTrace(PathRecord.from_vertices(graph, prefix), tuple(log))


def cost_ratio(graph: TaskGraph, config: AgentConfig) -> Fraction:
    """Biased traversal cost divided by the cheapest-path cost."""
    optimal = graph.cheapest_cost(graph.source)
    if optimal == 0:
        raise ZeroOptimalCost("cheapest path costs zero")
    biased = traverse(graph, config).path.cost
    return biased / optimal
