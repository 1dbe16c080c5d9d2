"""Task-graph core: validation, hop-bounded cheapest paths, per-length minima.

A task graph is a weighted DAG with a designated source and sink.  All costs
are exact rationals (``fractions.Fraction``) parsed from strings such as
``"2"``, ``"0.5"`` or ``"3/2"``, so every comparison downstream is bit-exact.
Vertices carry a stable total order (their position in the input list); all
tie-breaking between equal-cost alternatives is lexicographic in that order.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .errors import CycleDetected, NegativeCost, NoSourceSinkPath


def parse_cost(value: str | int | float | Fraction) -> Fraction:
    """Parse an edge cost exactly; raises NegativeCost for negative values."""
    if isinstance(value, float):
        raise ValueError(f"cost {value!r} must be a string or integer, not float")
    cost = Fraction(value)
    if cost < 0:
        raise NegativeCost(f"negative edge cost {cost}")
    return cost


@dataclass(frozen=True)
class Edge:
    tail: str
    head: str
    cost: Fraction


@dataclass(frozen=True)
class PathRecord:
    """A concrete path: vertex sequence plus cached cost and edge count."""

    vertices: tuple[str, ...]
    cost: Fraction
    length: int

    @classmethod
    def from_vertices(cls, graph: "TaskGraph", seq: Sequence[str]) -> "PathRecord":
        seq = tuple(seq)
        if len(seq) < 2:
            raise ValueError("a path needs at least one edge")
        cost = Fraction(0)
        for u, v in zip(seq, seq[1:]):
            cost += graph.edge_cost(u, v)
        return cls(seq, cost, len(seq) - 1)

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "cost": str(self.cost),
            "length": self.length,
        }


@dataclass(frozen=True)
class HopCostTable:
    """Cheapest v->t costs under hop budgets: any, at most k, fewer than k edges."""

    vertex: str
    at_most: tuple[Fraction | None, ...]  # index k = cheapest cost using <= k edges

    def cost_any(self) -> Fraction | None:
        return self.at_most[-1]

    def cost_at_most(self, k: int) -> Fraction | None:
        if k < 0:
            return None
        if k >= len(self.at_most):
            return self.at_most[-1]
        return self.at_most[k]

    def cost_fewer(self, k: int) -> Fraction | None:
        return self.cost_at_most(k - 1)


@dataclass(frozen=True)
class TaskGraph:
    """Validated, immutable weighted DAG with source and sink.

    Construct through :func:`validate`; every vertex of a validated graph lies
    on at least one source->sink path, so cheapest-path queries are total.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    source: str
    sink: str
    pruned: tuple[str, ...] = field(default=(), compare=False)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.tail].append(e)
        return {v: tuple(sorted(es, key=lambda e: self.index[e.head])) for v, es in out.items()}

    @cached_property
    def edge_costs(self) -> dict[tuple[str, str], Fraction]:
        return {(e.tail, e.head): e.cost for e in self.edges}

    def successors(self, v: str) -> tuple[Edge, ...]:
        return self.adjacency[v]

    def edge_cost(self, u: str, v: str) -> Fraction:
        try:
            return self.edge_costs[(u, v)]
        except KeyError:
            raise KeyError(f"no edge {u}->{v}") from None

    @cached_property
    def topo_order(self) -> tuple[str, ...]:
        indeg = {v: 0 for v in self.vertices}
        for e in self.edges:
            indeg[e.head] += 1
        ready = sorted((v for v in self.vertices if indeg[v] == 0), key=self.index.__getitem__)
        queue = deque(ready)
        order: list[str] = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for e in self.adjacency[v]:
                indeg[e.head] -= 1
                if indeg[e.head] == 0:
                    queue.append(e.head)
        if len(order) != len(self.vertices):
            raise CycleDetected("cycle among validated vertices")
        return tuple(order)

    @cached_property
    def exact_length_costs(self) -> dict[str, tuple[Fraction | None, ...]]:
        """For each vertex v: cheapest v->sink cost using exactly k edges, k=0..|V|-1."""
        kmax = len(self.vertices) - 1
        table: dict[str, list[Fraction | None]] = {v: [None] * (kmax + 1) for v in self.vertices}
        table[self.sink][0] = Fraction(0)
        for v in reversed(self.topo_order):
            row = table[v]
            for e in self.adjacency[v]:
                succ = table[e.head]
                for k in range(1, kmax + 1):
                    prev = succ[k - 1]
                    if prev is None:
                        continue
                    cand = e.cost + prev
                    if row[k] is None or cand < row[k]:
                        row[k] = cand
        return {v: tuple(row) for v, row in table.items()}

    @cached_property
    def hop_tables(self) -> dict[str, HopCostTable]:
        tables = {}
        for v, exact in self.exact_length_costs.items():
            best: Fraction | None = None
            prefix: list[Fraction | None] = []
            for val in exact:
                if val is not None and (best is None or val < best):
                    best = val
                prefix.append(best)
            tables[v] = HopCostTable(v, tuple(prefix))
        return tables

    def hop_table(self, v: str) -> HopCostTable:
        return self.hop_tables[v]

    def cheapest_cost(self, v: str) -> Fraction:
        cost = self.hop_tables[v].cost_any()
        assert cost is not None  # every validated vertex reaches the sink
        return cost

    def path_key(self, path: PathRecord) -> tuple[int, ...]:
        """Sort key giving the lexicographic order on vertex sequences."""
        return tuple(self.index[v] for v in path.vertices)

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"from": e.tail, "to": e.head, "cost": str(e.cost)} for e in self.edges
            ],
            "source": self.source,
            "sink": self.sink,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def validate(data: Mapping) -> TaskGraph:
    """Build a canonical TaskGraph from a raw description.

    Vertices that lie on no source->sink path are pruned (recorded in
    ``graph.pruned``) rather than rejected.  Parallel edges keep the cheapest
    copy; self loops count as cycles.
    """
    try:
        raw_vertices = list(data["vertices"])
        raw_edges = list(data["edges"])
        source = data["source"]
        sink = data["sink"]
    except KeyError as exc:
        raise ValueError(f"graph description missing key {exc}") from None

    if len(set(raw_vertices)) != len(raw_vertices):
        raise ValueError("duplicate vertex ids")
    known = set(raw_vertices)
    if source not in known or sink not in known:
        raise NoSourceSinkPath("source or sink not among vertices")
    if source == sink:
        raise NoSourceSinkPath("source equals sink")

    best: dict[tuple[str, str], Fraction] = {}
    for item in raw_edges:
        tail, head = item["from"], item["to"]
        if tail not in known or head not in known:
            raise ValueError(f"edge {tail}->{head} uses unknown vertex")
        if tail == head:
            raise CycleDetected(f"self loop at {tail}")
        cost = parse_cost(item["cost"])
        key = (tail, head)
        if key not in best or cost < best[key]:
            best[key] = cost

    fwd: dict[str, list[str]] = {v: [] for v in raw_vertices}
    back: dict[str, list[str]] = {v: [] for v in raw_vertices}
    for (tail, head) in best:
        fwd[tail].append(head)
        back[head].append(tail)

    def reachable(start: str, adj: dict[str, list[str]]) -> set[str]:
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    from_source = reachable(source, fwd)
    if sink not in from_source:
        raise NoSourceSinkPath(f"no path from {source} to {sink}")
    to_sink = reachable(sink, back)
    keep = from_source & to_sink

    vertices = tuple(v for v in raw_vertices if v in keep)
    pruned = tuple(v for v in raw_vertices if v not in keep)
    order = {v: i for i, v in enumerate(vertices)}
    edges = tuple(
        Edge(tail, head, cost)
        for (tail, head), cost in sorted(best.items(), key=lambda kv: (order.get(kv[0][0], -1), order.get(kv[0][1], -1)))
        if tail in keep and head in keep
    )

    graph = TaskGraph(vertices, edges, source, sink, pruned)
    graph.topo_order  # raises CycleDetected on cyclic survivors
    return graph


def load_graph(text: str) -> TaskGraph:
    return validate(json.loads(text))


def hop_bounded_cheapest(graph: TaskGraph, v: str, k: int | None = None) -> Fraction | None:
    """Cost of the cheapest v->sink path using at most k edges (None = unbounded)."""
    table = graph.hop_table(v)
    if k is None:
        return table.cost_any()
    if k < 0:
        raise ValueError("hop bound must be nonnegative or None")
    return table.cost_at_most(k)


def cheapest_per_length(graph: TaskGraph) -> dict[int, PathRecord]:
    """One cheapest source->sink path for every feasible exact length.

    Ties are broken by the lexicographically smallest vertex sequence in the
    graph's vertex order.
    """
    exact = graph.exact_length_costs[graph.source]
    result: dict[int, PathRecord] = {}
    for k, total in enumerate(exact):
        if k == 0 or total is None:
            continue
        seq = [graph.source]
        u, remaining, budget = graph.source, total, k
        while u != graph.sink:
            for e in graph.successors(u):
                succ_cost = graph.exact_length_costs[e.head][budget - 1]
                if succ_cost is not None and e.cost + succ_cost == remaining:
                    seq.append(e.head)
                    u, remaining, budget = e.head, succ_cost, budget - 1
                    break
            else:  # pragma: no cover - DP guarantees a witness
                raise AssertionError("length-cost table inconsistent")
        result[k] = PathRecord(tuple(seq), total, k)
    return result
