"""Randomized cross-checks between the analytical routines and the oracles.

Each suite returns a report dict with a case count and a list of
counterexample dumps (graph JSON plus parameters); an empty failure list means
the suite passed.  Counts scale linearly with the ``scale`` argument so CI can
trade time for confidence.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import bne, oracle
from .agents import RewardTie
from .equilibria import (
    algorithm_breakpoints,
    check_symmetric_ne,
    classify_unbiased,
    dominant_path_reward,
    fan_ne_thresholds,
    feasible_rewards,
)
from .graph import TaskGraph
from .instances import FanSpec, fan_path, make_fan

SUITES = ("alg1", "prop1", "thm1", "thm2", "bne")


def _dump(graph: TaskGraph, **params) -> dict:
    return {"graph": graph.to_json_dict(), **params}


def suite_alg1(seed: int, scale: float = 1.0) -> dict:
    """Feasible-reward sets must match the brute-force reward sweep pointwise."""
    rng = np.random.default_rng(seed)
    n_graphs = max(1, int(40 * scale))
    cases = 0
    failures: list[dict] = []
    for _ in range(n_graphs):
        graph = oracle.random_layered_graph(rng)
        paths = oracle.enumerate_paths(graph)
        for q in paths:
            for bias in (Fraction(2), Fraction(10)):
                feasible = feasible_rewards(graph, q, bias)
                points = algorithm_breakpoints(graph, q, bias)
                candidates = oracle.sweep_candidates(points, extra_random=5, rng=rng)
                swept = oracle.reward_sweep_ne(graph, q, bias, candidates)
                for r in candidates:
                    cases += 1
                    if feasible.contains(r) != (r in swept):
                        failures.append(_dump(
                            graph,
                            path=list(q.vertices),
                            bias=str(bias),
                            reward=str(r),
                            interval_says=feasible.contains(r),
                            sweep_says=r in swept,
                        ))
    return {"suite": "alg1", "cases": cases, "failures": failures}


def suite_prop1(seed: int, scale: float = 1.0) -> dict:
    """Ladder classification must agree with the best-response table."""
    rng = np.random.default_rng(seed)
    n_instances = max(1, int(100 * scale))
    cases = 0
    failures: list[dict] = []
    rewards = [Fraction(x) for x in ("0", "1/2", "1", "2", "4", "8", "16")]
    for _ in range(n_instances):
        graph = oracle.random_ladder_graph(rng)
        reward = rewards[int(rng.integers(0, len(rewards)))]
        for tie_rule in RewardTie:
            cases += 1
            report = classify_unbiased(graph, reward, tie_rule)
            paths = report.ladder.paths
            costs = [p.cost for p in paths]
            lengths = [p.length for p in paths]
            sym, asym = oracle.best_response_table(costs, lengths, reward, tie_rule)
            got_sym = [paths.index(p) for p in report.symmetric]
            ok = sorted(got_sym) == sorted(sym)
            if report.asymmetric is None:
                ok = ok and not asym
            else:
                i, j = paths.index(report.asymmetric[0]), paths.index(report.asymmetric[1])
                ok = ok and sorted(asym) == sorted({(i, j), (j, i)})
            if tie_rule is RewardTie.SPLIT and len(sym) > 2:
                ok = False
            if not ok:
                failures.append(_dump(
                    graph, reward=str(reward), tie=tie_rule.value,
                    classified=got_sym, brute=sym, brute_asym=asym,
                ))
    return {"suite": "prop1", "cases": cases, "failures": failures}


def suite_thm1(seed: int, scale: float = 1.0) -> dict:
    """Fan equilibria exist exactly at the closed-form reward thresholds."""
    rng = np.random.default_rng(seed)
    combos = [
        (3, Fraction(3, 2), Fraction(2)),
        (4, Fraction(2), Fraction(3)),
        (5, Fraction(3, 2), Fraction(2)),
        (6, Fraction(5, 4), Fraction(3, 2)),
    ]
    cases = 0
    failures: list[dict] = []
    for n, c, bias in combos:
        spec = FanSpec(n, c)
        graph = make_fan(spec)
        thresholds = fan_ne_thresholds(spec, bias)
        lo, hi = thresholds.optimal_min_reward, thresholds.longest_max_reward
        probes = {lo, hi, lo / 2, lo + Fraction(1, 100), hi + Fraction(1, 100), hi * 2}
        for _ in range(int(8 * scale)):
            probes.add(Fraction(int(rng.integers(0, 64)), 4))
        for r in sorted(probes):
            cases += 1
            on_direct = bool(check_symmetric_ne(graph, fan_path(graph, 0), r, bias))
            on_longest = bool(check_symmetric_ne(graph, fan_path(graph, n), r, bias))
            interior = [
                bool(check_symmetric_ne(graph, fan_path(graph, i), r, bias))
                for i in range(1, n)
            ]
            ok = (
                on_direct == (r >= lo)
                and on_longest == (r <= hi)
                and not any(interior)
            )
            if not ok:
                failures.append(_dump(graph, n=n, c=str(c), bias=str(bias), reward=str(r)))
    return {"suite": "thm1", "cases": cases, "failures": failures}


def suite_thm2(seed: int, scale: float = 1.0) -> dict:
    """The dominant-path reward bound always yields an equilibrium."""
    rng = np.random.default_rng(seed)
    n_graphs = max(1, int(50 * scale))
    cases = 0
    failures: list[dict] = []
    for _ in range(n_graphs):
        graph = oracle.random_dominant_graph(rng)
        for bias in (Fraction(3, 2), Fraction(2), Fraction(5)):
            cases += 1
            bound = dominant_path_reward(graph, bias)
            if not check_symmetric_ne(graph, bound.path, bound.reward, bias):
                failures.append(_dump(graph, bias=str(bias), reward=str(bound.reward)))
    return {"suite": "thm2", "cases": cases, "failures": failures}


def suite_bne(seed: int, scale: float = 1.0) -> dict:
    """Solver fixed points match closed forms and survive simulation."""
    failures: list[dict] = []
    cases = 0
    spec = FanSpec(5, Fraction(2))

    def fail(**info) -> None:
        failures.append(info)

    for r in (2.0, 3.0, 4.0, 10.0, 50.0):
        cases += 1
        dist = bne.BiasDistribution.equal_revenue(2.0)
        solved = bne.solve_fan_bne(spec, dist, r)
        if abs(solved.prob_optimal - bne.closed_form_p(dist, r)) > 1e-9:
            fail(dist="equal-revenue", reward=r, solver=solved.prob_optimal)
    for r in (1.0, 2.0, 4.0, 6.0):
        cases += 1
        dist = bne.BiasDistribution.uniform(2.0, 3.0)
        solved = bne.solve_fan_bne(spec, dist, r)
        if abs(solved.prob_optimal - bne.closed_form_p(dist, r)) > 1e-9:
            fail(dist="uniform", reward=r, solver=solved.prob_optimal)
    for r in (3.0, 6.0, 10.0):
        cases += 1
        dist = bne.BiasDistribution.shifted_exponential(2.0, 1.0)
        solved = bne.solve_fan_bne(spec, dist, r)
        if abs(solved.prob_optimal - bne.closed_form_p(dist, r)) > 1e-8:
            fail(dist="exponential", reward=r, solver=solved.prob_optimal)

    samples = max(10**4, int(2 * 10**4 * scale))
    dist = bne.BiasDistribution.equal_revenue(2.0)
    solved = bne.solve_fan_bne(spec, dist, 4.0)
    cases += 1
    freqs = oracle.monte_carlo_fan_bne(spec, dist, 4.0, solved.cutoff, samples, seed)
    band = 3.0 * max(freqs.std_errors[0], 1e-9)
    if abs(freqs.frequencies[0] - solved.prob_optimal) > band or any(
        freqs.frequencies[i] for i in range(1, spec.n)
    ):
        fail(dist="equal-revenue", reward=4.0, frequencies=freqs.frequencies)

    for p in np.linspace(0.01, 1.0, 34):
        for m in (1, 2, 5, 20):
            cases += 1
            if not bne.reward_share_factor(float(p), m) > 0:
                fail(share_factor_at=(float(p), m))
    return {"suite": "bne", "cases": cases, "failures": failures}


def run_suite(name: str, seed: int = 0, scale: float = 1.0) -> dict:
    runners = {
        "alg1": suite_alg1,
        "prop1": suite_prop1,
        "thm1": suite_thm1,
        "thm2": suite_thm2,
        "bne": suite_bne,
    }
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    report = runners[name](seed, scale)
    report["passed"] = not report["failures"]
    return report
