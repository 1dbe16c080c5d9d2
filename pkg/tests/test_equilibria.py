from fractions import Fraction

import numpy as np
import pytest

from biasgraph import (
    BiasNotAboveC,
    FanSpec,
    NoDominantPath,
    PathRecord,
    RewardTie,
    algorithm_breakpoints,
    check_symmetric_ne,
    classify_unbiased,
    dominant_path_reward,
    fan_ne_thresholds,
    fan_path,
    feasible_rewards,
    make_fan,
    make_named_instance,
    min_reward_for_ne,
    nondominated_ladder,
)
from biasgraph.oracle import (
    best_response_table,
    random_dominant_graph,
    random_ladder_graph,
    random_layered_graph,
)

from conftest import build_graph, spine_graph

F = Fraction


class TestNondominatedLadder:
    def test_all_survive_when_reward_large(self, rungs_graph):
        ladder = nondominated_ladder(rungs_graph, F(8))
        assert ladder.costs == (7, 6, 0)
        assert [p.length for p in ladder.paths] == [1, 2, 3]

    def test_losing_on_cheapest_dominates_expensive_paths(self, rungs_graph):
        # with reward 5, both the cost-7 and cost-6 paths lose to a sure 0
        ladder = nondominated_ladder(rungs_graph, F(5))
        assert ladder.costs == (0,)

    def test_single_path_graph(self):
        g = build_graph([("s", "t", 3)])
        assert len(nondominated_ladder(g, F(2))) == 1

    def test_quicker_and_cheaper_dominates(self):
        g = build_graph(
            [("s", "t", 1), ("s", "a", 2), ("a", "t", 0)],
            vertices=["s", "t", "a"],
        )
        ladder = nondominated_ladder(g, F(10))
        assert ladder.costs == (1,)

    def test_ladder_invariants_on_random_graphs(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            graph = random_ladder_graph(rng)
            reward = F(int(rng.integers(0, 17)), 2)
            ladder = nondominated_ladder(graph, reward)
            costs, lengths = ladder.costs, [p.length for p in ladder.paths]
            assert all(a > b for a, b in zip(costs, costs[1:]))
            assert all(a < b for a, b in zip(lengths, lengths[1:]))
            assert costs[0] - costs[-1] <= reward


class TestClassifyUnbiased:
    def test_split_rule_single_equilibrium(self, rungs_graph):
        report = classify_unbiased(rungs_graph, F(8))
        assert [p.cost for p in report.symmetric] == [0]
        assert report.asymmetric is None

    def test_low_reward_filters_before_classifying(self, rungs_graph):
        report = classify_unbiased(rungs_graph, F(1))
        assert report.ladder.costs == (0,)
        assert [p.cost for p in report.symmetric] == [0]

    def test_full_tie_rule_everything_is_symmetric(self, rungs_graph):
        report = classify_unbiased(rungs_graph, F(8), RewardTie.FULL)
        assert report.symmetric == report.ladder.paths
        assert report.asymmetric is None

    def test_none_tie_rule_needs_two_rungs(self, rungs_graph):
        report = classify_unbiased(rungs_graph, F(8), RewardTie.NONE)
        assert report.symmetric == ()
        assert report.asymmetric is None  # three rungs survive at reward 8

        two_rung = build_graph(
            [("s", "t", 2), ("s", "a", 0), ("a", "t", 0)],
            vertices=["s", "t", "a"],
        )
        report = classify_unbiased(two_rung, F(4), RewardTie.NONE)
        assert report.symmetric == ()
        assert report.asymmetric is not None

    def test_knife_edge_asymmetric_pair(self):
        g = build_graph(
            [("s", "t", 2), ("s", "a", 0), ("a", "t", 0)],
            vertices=["s", "t", "a"],
        )
        report = classify_unbiased(g, F(4))
        assert report.asymmetric is not None  # cost gap 2 equals reward/2
        assert len(report.symmetric) == 2
        report = classify_unbiased(g, F(5))
        assert report.asymmetric is None

    def test_matches_best_response_table(self):
        rng = np.random.default_rng(19)
        for _ in range(80):
            graph = random_ladder_graph(rng)
            reward = F(int(rng.integers(0, 25)), 2)
            for tie_rule in RewardTie:
                report = classify_unbiased(graph, reward, tie_rule)
                paths = report.ladder.paths
                sym, asym = best_response_table(
                    [p.cost for p in paths], [p.length for p in paths], reward, tie_rule
                )
                assert sorted(paths.index(p) for p in report.symmetric) == sorted(sym)
                if report.asymmetric is None:
                    assert not asym
                else:
                    i = paths.index(report.asymmetric[0])
                    j = paths.index(report.asymmetric[1])
                    assert sorted(asym) == sorted({(i, j), (j, i)})


class TestCheckSymmetricNe:
    def test_fan_direct_path_at_threshold(self, fan5):
        _, graph = fan5
        assert check_symmetric_ne(graph, fan_path(graph, 0), F(1), F(2)).is_equilibrium

    def test_fan_longest_path_under_cap(self, fan5):
        _, graph = fan5
        assert check_symmetric_ne(graph, fan_path(graph, 5), F(1), F(2)).is_equilibrium

    def test_fan_interior_paths_never_equilibria(self, fan5):
        _, graph = fan5
        for r in (F(0), F(1), F(10), F(1000)):
            result = check_symmetric_ne(graph, fan_path(graph, 2), r, F(2))
            assert not result.is_equilibrium
            assert result.deviated_at in fan_path(graph, 2).vertices

    def test_witness_identifies_first_deviation(self, fan5):
        _, graph = fan5
        result = check_symmetric_ne(graph, fan_path(graph, 0), F(1, 2), F(2))
        assert not result
        assert result.deviated_at == "s"
        assert result.trace.path.vertices[-1] == "t"

    def test_partial_paths_rejected(self, fan5):
        _, graph = fan5
        fragment = PathRecord.from_vertices(graph, ("v1", "t"))
        with pytest.raises(ValueError):
            check_symmetric_ne(graph, fragment, F(1), F(2))
        with pytest.raises(ValueError):
            feasible_rewards(graph, fragment, F(2))


class TestFanThresholds:
    def test_five_fan(self):
        got = fan_ne_thresholds(FanSpec(5, F(3, 2)), F(2))
        assert (got.optimal_min_reward, got.longest_max_reward) == (1, F(81, 16))

    def test_degenerate_at_equal_bias(self):
        got = fan_ne_thresholds(FanSpec(4, F(2)), F(2))
        assert (got.optimal_min_reward, got.longest_max_reward) == (0, 0)

    def test_single_vertex_fan(self):
        got = fan_ne_thresholds(FanSpec(1, F(2)), F(3))
        assert (got.optimal_min_reward, got.longest_max_reward) == (2, 2)

    def test_bias_below_growth_rejected(self):
        with pytest.raises(BiasNotAboveC):
            fan_ne_thresholds(FanSpec(3, F(2)), F(3, 2))

    def test_thresholds_agree_with_ne_check(self):
        rng = np.random.default_rng(31)
        for n, c, b in [(3, F(3, 2), F(2)), (4, F(2), F(3)), (5, F(3, 2), F(2)), (6, F(5, 4), F(3, 2))]:
            spec = FanSpec(n, c)
            graph = make_fan(spec)
            lo = fan_ne_thresholds(spec, b).optimal_min_reward
            hi = fan_ne_thresholds(spec, b).longest_max_reward
            probes = {lo, hi, lo + F(1, 100), hi + F(1, 100), lo / 2, hi * 2}
            probes |= {F(int(rng.integers(0, 40)), 4) for _ in range(6)}
            for r in probes:
                assert bool(check_symmetric_ne(graph, fan_path(graph, 0), r, b)) == (r >= lo)
                assert bool(check_symmetric_ne(graph, fan_path(graph, n), r, b)) == (r <= hi)
                for i in range(1, n):
                    assert not check_symmetric_ne(graph, fan_path(graph, i), r, b)


class TestDominantPathReward:
    def test_fan_direct_path_dominates(self, fan5):
        _, graph = fan5
        bound = dominant_path_reward(graph, F(2))
        assert bound.path.vertices == ("s", "t")
        assert bound.reward == 4  # two agents, bias 2, max edge 1

    def test_equal_parallel_edges_have_no_dominant_path(self):
        g = build_graph(
            [("s", "a", 1), ("a", "t", 0), ("s", "b", 1), ("b", "t", 0)],
            vertices=["s", "a", "b", "t"],
        )
        with pytest.raises(NoDominantPath):
            dominant_path_reward(g, F(2))

    def test_quickest_but_not_cheapest_rejected(self):
        g = build_graph(
            [("s", "t", 5), ("s", "a", 1), ("a", "t", 1)],
            vertices=["s", "t", "a"],
        )
        with pytest.raises(NoDominantPath):
            dominant_path_reward(g, F(2))

    def test_spine_graph_bound_and_exact_minimum(self):
        graph = spine_graph(5)
        bias = F(3)
        bound = dominant_path_reward(graph, bias)
        assert bound.max_edge_cost == 1
        assert bound.reward == 6
        assert check_symmetric_ne(graph, bound.path, bound.reward, bias)
        # the exact requirement is lower: twice the detour saving
        assert min_reward_for_ne(graph, bound.path, bias) == 2

    def test_more_agents_scale_linearly(self, fan5):
        _, graph = fan5
        assert dominant_path_reward(graph, F(2), agents=5).reward == 10

    def test_random_dominant_graphs_all_pass(self):
        rng = np.random.default_rng(37)
        for _ in range(30):
            graph = random_dominant_graph(rng)
            for bias in (F(3, 2), F(2), F(5)):
                bound = dominant_path_reward(graph, bias)
                assert check_symmetric_ne(graph, bound.path, bound.reward, bias)


class TestFeasibleRewards:
    def test_fan_direct_path_feasible_tail(self, fan5):
        _, graph = fan5
        feasible = feasible_rewards(graph, fan_path(graph, 0), F(2))
        assert feasible.to_json_list() == [{"lo": "1", "hi": None}]
        assert min_reward_for_ne(graph, fan_path(graph, 0), F(2)) == 1

    def test_fan_interior_path_infeasible(self, fan5):
        _, graph = fan5
        assert feasible_rewards(graph, fan_path(graph, 2), F(2)).is_empty
        assert min_reward_for_ne(graph, fan_path(graph, 2), F(2)) is None

    def test_fan_longest_path_cap(self, fan5):
        _, graph = fan5
        feasible = feasible_rewards(graph, fan_path(graph, 5), F(2))
        assert feasible.to_json_list() == [{"lo": "0", "hi": "81/16"}]

    def test_bounded_feasible_set(self):
        graph, meta = make_named_instance("fig7a")
        q = PathRecord.from_vertices(graph, meta["Q"])
        feasible = feasible_rewards(graph, q, F(10))
        assert feasible.contains(F(1))
        assert not feasible.contains(F(300))
        assert feasible.intervals[-1].hi is not None

    def test_single_edge_path(self):
        g = build_graph([("s", "t", 1), ("s", "a", 0), ("a", "t", 3)], vertices=["s", "t", "a"])
        q = PathRecord.from_vertices(g, ("s", "t"))
        # staying beats the detour when b*1 - r/2 <= 0 + 3 - 0, i.e. r >= 2b - 6
        feasible = feasible_rewards(g, q, F(4))
        assert feasible.to_json_list() == [{"lo": "2", "hi": None}]

    def test_breakpoints_cover_result_endpoints(self, fan5):
        _, graph = fan5
        points = algorithm_breakpoints(graph, fan_path(graph, 5), F(2))
        assert F(81, 16) in points
        assert all(p >= 0 for p in points)

    def test_membership_equals_traversal_check_on_random_graphs(self):
        from biasgraph.oracle import enumerate_paths

        rng = np.random.default_rng(47)
        for _ in range(12):
            graph = random_layered_graph(rng)
            for q in enumerate_paths(graph):
                for bias in (F(3, 2), F(2), F(5), F(10)):
                    feasible = feasible_rewards(graph, q, bias)
                    points = list(algorithm_breakpoints(graph, q, bias))
                    candidates = set(points)
                    candidates.update((a + b) / 2 for a, b in zip(points, points[1:]))
                    candidates.update(F(int(rng.integers(0, 200)), 8) for _ in range(50))
                    for r in candidates:
                        stays = check_symmetric_ne(graph, q, r, bias).is_equilibrium
                        assert feasible.contains(r) == stays, (q.vertices, bias, r)
