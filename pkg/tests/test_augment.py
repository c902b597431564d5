import math

import networkx as nx
import pytest

from StochasticTester.graph import Graph, is_connected
from StochasticTester.plugins.Stochastic_Augment import (
    AugmentParams,
    ProcessVariant,
    TrialStats,
    augment,
    count_events,
    estimate_failure,
    geometric_grid,
    iterative_process,
    lemma31_probability,
    repeated_union,
    sample_additions,
    t_from_probability,
    theorem41_probability,
    threshold_search,
    tightness_probability,
)
from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.stats import binomial_sigma, fit_exponent, wilson_interval
from conftest import disjoint_cycles


def test_params_domain():
    graph = disjoint_cycles(3, 3)
    assert AugmentParams.for_graph(graph, 3.0, 1).per_edge_prob == pytest.approx(3 / graph.non_edge_count)
    for t in (-1.0, graph.non_edge_count + 1.0, float('nan')):
        with pytest.raises(DomainError):
            AugmentParams.for_graph(graph, t, 1)
    assert AugmentParams.from_probability(graph, 2.0, 1).t == graph.non_edge_count


def test_sample_additions_extremes():
    graph = disjoint_cycles(4, 4)
    assert len(sample_additions(graph, AugmentParams.for_graph(graph, 0.0, 5))) == 0
    full = augment(graph, graph.non_edge_count, 5)
    assert full == Graph.complete(8)


def test_sample_additions_are_reproducible_non_edges():
    graph = disjoint_cycles(5, 7)
    params = AugmentParams.for_graph(graph, 10.0, 42)
    first = sample_additions(graph, params)
    assert (first == sample_additions(graph, params)).all()
    for u, v in first.tolist():
        assert u < v
        assert not graph.has_edge(u, v)
    assert graph.is_subgraph_of(augment(graph, 10.0, 42))


def test_repeated_union():
    graph = disjoint_cycles(4, 6)
    assert repeated_union(graph, 6.0, 1, 3) == augment(graph, 6.0, 3)
    union = repeated_union(graph, 6.0, 3, 3)
    assert augment(graph, 6.0, 3).is_subgraph_of(union)
    with pytest.raises(DomainError):
        repeated_union(graph, 6.0, 0, 3)
    with pytest.raises(DomainError):
        repeated_union(graph, graph.non_edge_count / 2 + 1, 2, 3)


def test_count_events_is_thread_independent():
    def trial(sub: int) -> bool:
        return sub % 3 == 0

    assert count_events(200, 9, trial, threads=1) == count_events(200, 9, trial, threads=4)
    with pytest.raises(DomainError):
        count_events(0, 9, trial)


def test_estimate_failure_trivial_cases():
    connected = Graph.complete(5)
    stats = estimate_failure(connected, 1, 0.0, 100, 1)
    assert stats.failures == 0
    pair = Graph.edgeless(2)
    assert estimate_failure(pair, 1, 1.0, 100, 1).failures == 0
    assert estimate_failure(pair, 1, 0.0, 100, 1).failures == 100


def test_estimate_failure_single_pair():
    stats = estimate_failure(Graph.edgeless(2), 1, 0.5, 4000, 17, threads=3)
    assert abs(stats.failure_rate - 0.5) <= 4 * binomial_sigma(0.5, 4000)
    assert stats.wilson_upper95 >= stats.failure_rate
    threaded = estimate_failure(Graph.edgeless(2), 1, 0.5, 4000, 17, threads=1)
    assert threaded.failures == stats.failures


def test_trial_stats_row():
    stats = TrialStats.from_counts(n=10, k=1, t=2.5, trials=8, failures=2, seed=3, family='two-cliques', s=None)
    assert stats.failure_rate == 0.25
    row = stats.to_csv_row()
    assert row[0] == 'two-cliques'
    assert row[3] == ''
    with pytest.raises(DomainError):
        TrialStats.from_counts(n=10, k=1, t=2.5, trials=0, failures=0, seed=3, family='x', s=None)


def test_geometric_grid():
    assert geometric_grid(10, 2.0) == [1.0, 2.0, 4.0, 8.0, 10.0]
    assert geometric_grid(0, 2.0) == [0.0]
    assert geometric_grid(1, 1.25) == [1.0]


def test_threshold_search():
    graph = disjoint_cycles(3, 9)
    loose = threshold_search(graph, 1, 0.5, 300, 8)
    strict = threshold_search(graph, 1, 0.05, 300, 8)
    assert 1 <= loose <= strict <= graph.non_edge_count
    with pytest.raises(DomainError):
        threshold_search(Graph.complete(4), 1, 0.1, 10, 1)
    with pytest.raises(DomainError):
        threshold_search(graph, 1, 1.5, 10, 1)


def test_probability_helpers():
    n, s = 100, 5
    assert lemma31_probability(n, s) == pytest.approx(8 * math.log(n) / (s * n))
    assert tightness_probability(n, s) == pytest.approx(2 * math.log(n) / (4 * s * n))
    assert theorem41_probability(n, s, 3.0) == pytest.approx(24 * math.log(n) / (s * n))
    assert t_from_probability(1.7, 40) == 40
    assert t_from_probability(0.25, 40) == 10


def test_iterative_process():
    graph = disjoint_cycles(4, 12)
    for tag in ('A-iterative-adaptive', 'B-iterative-fixed', 'C-one-shot'):
        result = iterative_process(graph, 1, ProcessVariant(tag=tag), 7)
        assert graph.is_subgraph_of(result)
        assert result == iterative_process(graph, 1, ProcessVariant(tag=tag), 7)
    complete = Graph.complete(8)
    assert iterative_process(complete, 2, ProcessVariant(tag='C-one-shot'), 1) is complete
    with pytest.raises(DomainError):
        iterative_process(graph, 5, ProcessVariant(tag='B-iterative-fixed'), 1)
    with pytest.raises(ValueError):
        ProcessVariant(tag='C-one-shot', c_const=1.0)


def test_processes_share_the_first_draw():
    # two K8 joined by one edge, r = 1 and k = 2 leave a single iteration with p' below p'·k < 1
    graph = Graph.from_networkx(nx.barbell_graph(8, 0))
    for seed in range(5):
        adaptive, fixed, one_shot = (iterative_process(graph, 2, ProcessVariant(tag=tag), seed)
                                     for tag in ('A-iterative-adaptive', 'B-iterative-fixed', 'C-one-shot'))
        assert adaptive == fixed
        assert fixed.is_subgraph_of(one_shot)
        assert fixed != one_shot


def test_stats_helpers():
    lo, hi = wilson_interval(0, 100)
    assert lo == 0.0 and 0 < hi < 0.05
    assert fit_exponent([1, 2, 4, 8], [3, 12, 48, 192]) == pytest.approx(2.0)


def test_tightness_keeps_small_component_isolated():
    n, s, trials = 100, 5, 2000
    graph = disjoint_cycles(s, n - s)
    t = t_from_probability(tightness_probability(n, s), graph.non_edge_count)
    stats = estimate_failure(graph, 1, t, trials, 23, threads=2)
    bound = n ** -1.0
    assert stats.failure_rate >= bound - 3 * binomial_sigma(bound, trials)


@pytest.mark.slow
@pytest.mark.parametrize('n', [50, 100, 200])
def test_upper_bound_on_two_components(n):
    trials = 10000
    for s in sorted({2, n // 10, n // 2}):
        graph = disjoint_cycles(s, n - s)
        assert not is_connected(graph)
        t = t_from_probability(lemma31_probability(n, s), graph.non_edge_count)
        stats = estimate_failure(graph, 1, t, trials, n + s, threads=4)
        target = float(n) ** -2
        assert stats.failure_rate <= target + 3 * math.sqrt(target / trials)


@pytest.mark.slow
@pytest.mark.parametrize('n', [50, 100, 200])
def test_tightness_on_two_components(n):
    trials = 20000
    for s in sorted({2, n // 10, n // 2}):
        graph = disjoint_cycles(s, n - s)
        t = t_from_probability(tightness_probability(n, s), graph.non_edge_count)
        stats = estimate_failure(graph, 1, t, trials, n * s, threads=4)
        bound = float(n) ** -1
        assert stats.failure_rate >= bound - 3 * binomial_sigma(stats.failure_rate, trials)
