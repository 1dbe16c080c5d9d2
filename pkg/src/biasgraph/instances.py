"""Generators for fan graphs and the bundled demonstration instances."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownInstance
from .graph import PathRecord, TaskGraph, validate


@dataclass(frozen=True)
class FanSpec:
    """An n-fan: free spine s->v1->..->vn, exits (vi,t) of cost c**i, direct (s,t) of cost 1."""

    n: int
    c: Fraction

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("fan needs n >= 1")
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c <= 1:
            raise ValueError("fan growth factor must exceed 1")


def make_fan(spec: FanSpec) -> TaskGraph:
    """Build the n-fan.

    The sink is registered right after the source so that an agent indifferent
    between finishing and delaying resolves the tie toward finishing.
    """
    vertices = ["s", "t"] + [f"v{i}" for i in range(1, spec.n + 1)]
    edges = [{"from": "s", "to": "t", "cost": "1"}, {"from": "s", "to": "v1", "cost": "0"}]
    for i in range(1, spec.n):
        edges.append({"from": f"v{i}", "to": f"v{i+1}", "cost": "0"})
    for i in range(1, spec.n + 1):
        edges.append({"from": f"v{i}", "to": "t", "cost": str(spec.c**i)})
    return validate({"vertices": vertices, "edges": edges, "source": "s", "sink": "t"})


def fan_path(graph: TaskGraph, exit_index: int) -> PathRecord:
    """P_i on a fan graph: the path leaving through (v_i, t); P_0 is (s, t)."""
    if exit_index == 0:
        return PathRecord.from_vertices(graph, ("s", "t"))
    seq = ["s"] + [f"v{j}" for j in range(1, exit_index + 1)] + ["t"]
    return PathRecord.from_vertices(graph, seq)


def resolve_path(graph: TaskGraph, text: str) -> PathRecord:
    """Parse a CLI path argument: comma-separated ids, or fan shorthand P0..Pn."""
    if len(text) > 1 and text[0] == "P" and text[1:].isdigit():
        return fan_path(graph, int(text[1:]))
    return PathRecord.from_vertices(graph, [v.strip() for v in text.split(",")])


# Demonstration graphs.  Only some edge costs are pinned by the quantities the
# instances must reproduce; the remaining costs are frozen here once.

_FIG1 = {
    "vertices": ["s", "x", "v", "y", "z", "t"],
    "edges": [
        {"from": "s", "to": "x", "cost": "6"},
        {"from": "x", "to": "t", "cost": "0"},
        {"from": "s", "to": "v", "cost": "0"},
        {"from": "v", "to": "y", "cost": "11"},
        {"from": "y", "to": "t", "cost": "0"},
        {"from": "v", "to": "z", "cost": "0"},
        {"from": "z", "to": "t", "cost": "21"},
    ],
    "source": "s",
    "sink": "t",
}

_FIG7A = {
    "vertices": ["s", "q1", "q2", "v1", "v2", "v3", "t"],
    "edges": [
        {"from": "s", "to": "q1", "cost": "0"},
        {"from": "q1", "to": "q2", "cost": "0"},
        {"from": "q2", "to": "t", "cost": "2"},
        {"from": "s", "to": "v1", "cost": "0"},
        {"from": "v1", "to": "t", "cost": "100"},
        {"from": "v1", "to": "v2", "cost": "0"},
        {"from": "v2", "to": "v3", "cost": "0"},
        {"from": "v3", "to": "t", "cost": "3"},
    ],
    "source": "s",
    "sink": "t",
}

_FIG7B = {
    "vertices": ["s", "q1", "q2", "v1", "v2", "v3", "u", "t"],
    "edges": [
        {"from": "s", "to": "q1", "cost": "0"},
        {"from": "q1", "to": "q2", "cost": "8"},
        {"from": "q2", "to": "t", "cost": "0"},
        {"from": "s", "to": "v1", "cost": "0"},
        {"from": "v1", "to": "v2", "cost": "1"},
        {"from": "v2", "to": "v3", "cost": "4"},
        {"from": "v3", "to": "t", "cost": "0"},
        {"from": "v1", "to": "u", "cost": "0"},
        {"from": "u", "to": "t", "cost": "10"},
    ],
    "source": "s",
    "sink": "t",
}


def make_named_instance(
    name: str,
    c: Fraction | str | int | None = None,
    c2: Fraction | str | int | None = None,
    c3: Fraction | str | int | None = None,
) -> tuple[TaskGraph, dict]:
    """Return a named instance plus metadata (interesting paths, suggested bias).

    Names: ``fig1`` (branching graph where bias 2 triples the traversal cost),
    ``fig7a`` (raising the reward pushes the agent onto a slower path),
    ``fig7b`` (raising the reward makes the agent stay put), and
    ``modified_3fan`` (fan with super-squaring exit costs; needs c, c2, c3).
    """
    if name == "fig1":
        graph = validate(_FIG1)
        meta = {
            "optimal": ["s", "x", "t"],
            "biased": ["s", "v", "z", "t"],
            "bias": "2",
        }
        return graph, meta
    if name == "fig7a":
        graph = validate(_FIG7A)
        meta = {
            "Q": ["s", "q1", "q2", "t"],
            "V": ["s", "v1", "v2", "v3", "t"],
            "X": ["s", "v1", "t"],
            "bias": "10",
            "rewards": ["1", "300"],
        }
        return graph, meta
    if name == "fig7b":
        graph = validate(_FIG7B)
        meta = {
            "Q": ["s", "q1", "q2", "t"],
            "V": ["s", "v1", "v2", "v3", "t"],
            "X": ["s", "v1", "u", "t"],
            "bias": "10",
            "rewards": ["2", "10"],
        }
        return graph, meta
    if name == "modified_3fan":
        if c is None or c2 is None or c3 is None:
            raise ValueError("modified_3fan needs parameters c, c2, c3")
        c, c2, c3 = Fraction(c), Fraction(c2), Fraction(c3)
        if not (1 < c and c * c < c2 and c2 * c2 < c3):
            raise ValueError("need 1 < c, c^2 < c2, c2^2 < c3")
        graph = validate(
            {
                "vertices": ["s", "t", "v1", "v2", "v3"],
                "edges": [
                    {"from": "s", "to": "t", "cost": "1"},
                    {"from": "s", "to": "v1", "cost": "0"},
                    {"from": "v1", "to": "v2", "cost": "0"},
                    {"from": "v2", "to": "v3", "cost": "0"},
                    {"from": "v1", "to": "t", "cost": str(c)},
                    {"from": "v2", "to": "t", "cost": str(c2)},
                    {"from": "v3", "to": "t", "cost": str(c3)},
                ],
                "source": "s",
                "sink": "t",
            }
        )
        meta = {"paths": {f"P{i}": fan_path(graph, i).vertices for i in range(4)}}
        return graph, meta
    raise UnknownInstance(f"unknown instance {name!r}")
