import math

import pytest
from pydantic import ValidationError

from StochasticTester.congest import TesterVerdict, Verdict, tester_verdict
from StochasticTester.graph import Graph, cut_size, edge_connectivity, is_connected
from StochasticTester.plugins.Experiment_Harness import InstanceSpec, generate
from StochasticTester.plugins.KConn_Tester import (
    EdgeWeighting,
    KConnReport,
    RepetitionSchedule,
    WindowSchedule,
    alive_roots,
    find_tree_event_seed,
    kconn_max_rounds,
    lemma51_frequency,
    run_kconn_test,
    run_repetition,
    sequential_witness_search,
    tree_event_holds,
    weighting_for_rep,
)
from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.stats import binomial_sigma
from conftest import path_graph


@pytest.fixture(scope='module')
def planted() -> Graph:
    return generate(InstanceSpec(family='planted-witness', n=20, s=4, k=3))


@pytest.fixture(scope='module')
def circulant() -> Graph:
    return generate(InstanceSpec(family='circulant-kconn', n=16, k=4))


def test_window_schedule():
    schedule = WindowSchedule(4)
    assert schedule.starts == [1, 9, 19]
    assert schedule.total == schedule.end == 30
    assert schedule.locate(1) == (1, 0)
    assert schedule.locate(8) == (1, 7)
    assert schedule.locate(9) == (2, 0)
    assert schedule.locate(30) == (3, 11)
    assert schedule.locate(31) is None
    assert WindowSchedule(1).end == 1
    assert [WindowSchedule(s).end for s in (2, 4, 8)] == [8, 30, 98]
    assert kconn_max_rounds(4) == 30 + 8 + 6


def test_repetition_schedule():
    schedule = RepetitionSchedule(s=4, k=3, n=20, master_seed=1)
    assert schedule.reps == math.ceil(8.0 * 4 ** (4 / 3) * math.log(20))
    assert RepetitionSchedule(s=3, k=1, n=20, master_seed=1).reps == math.ceil(8.0 * math.log(20))
    assert schedule.seed(0) != schedule.seed(1)


def test_edge_weighting():
    weights = EdgeWeighting(5, 0)
    assert weights.key(3, 1) == weights.key(1, 3)
    assert weights.key(1, 3)[1:] == (1, 3)
    assert 0 <= weights.weight(1, 3) < 1
    assert EdgeWeighting(5, 0).weight(1, 3) == weights.weight(1, 3)
    assert EdgeWeighting(5, 1).weight(1, 3) != weights.weight(1, 3)
    relabeled = EdgeWeighting(5, 0, node_ids=[2, 0, 1])
    assert relabeled.key(0, 1) == weights.key_ids(2, 0)


def test_tree_event_on_two_path():
    graph = path_graph(3)
    for seed in range(20):
        weights = EdgeWeighting(seed)
        expected = weights.key(0, 1) < weights.key(1, 2)
        assert tree_event_holds(graph, [0, 1], weights) == expected
    assert tree_event_holds(graph, [0, 2], EdgeWeighting(1)) is False
    assert tree_event_holds(graph, [1], EdgeWeighting(1)) is True


def test_lemma51_frequency():
    graph = path_graph(3)
    frequency = lemma51_frequency(graph, [0, 1], 2, 4000, 11, threads=2)
    assert abs(frequency - 0.5) <= 4 * binomial_sigma(0.5, 4000)
    assert lemma51_frequency(graph, [0], 2, 10, 1) == 1.0
    with pytest.raises(DomainError):
        lemma51_frequency(graph, [1], 2, 10, 1)


def test_sequential_process_finds_planted_witness(planted):
    repetition = find_tree_event_seed(planted, range(4), 13)
    weights = weighting_for_rep(planted.n, 13, repetition)
    for u in range(4):
        witness = sequential_witness_search(planted, u, 4, 3, weights)
        assert witness is not None
        assert witness.cut_size < 3
        assert witness.size <= 4
        assert witness.cut_size == cut_size(planted, witness.members)


def test_sequential_process_on_k_connected_graph(circulant):
    weights = EdgeWeighting(3)
    for u in range(circulant.n):
        assert sequential_witness_search(circulant, u, 8, 4, weights) is None
    with pytest.raises(DomainError):
        sequential_witness_search(circulant, 0, circulant.n, 4, weights)


def test_singleton_check():
    graph = path_graph(5)
    report, witnesses, _ = run_repetition(graph, 2, 2, 1, 0)
    assert tester_verdict(report) == TesterVerdict.SOME_REJECT
    members = [w.members for w in witnesses]
    assert [0] in members and [4] in members
    assert all(len(m) <= 2 and cut_size(graph, m) < 2 for m in members)
    assert all(w.source.kind == 'distributed-run' for w in witnesses)


def test_repetition_under_tree_event_rejects(planted):
    for master_seed in (1, 2, 3):
        repetition = find_tree_event_seed(planted, range(4), master_seed)
        report, witnesses, _ = run_repetition(planted, 4, 3, master_seed, repetition)
        assert tester_verdict(report) == TesterVerdict.SOME_REJECT
        assert witnesses
        for witness in witnesses:
            assert witness.size <= 4
            assert cut_size(planted, witness.members) < 3
        assert report.max_message_bits <= report.budget_bits


def test_k_connected_instance_accepts(circulant):
    report = run_kconn_test(circulant, 4, 4, 21, reps=3)
    assert report.verdict == TesterVerdict.ALL_ACCEPT
    assert report.witness is None
    assert report.reps_run == 3
    assert report.rounds_per_rep == [WindowSchedule(4).end] * 3
    assert report.rounds_total == 90


def test_first_window_every_cluster_broadcasts(circulant):
    _, _, engine = run_repetition(circulant, 4, 4, 8, 0)
    assert alive_roots(engine.programs.values(), 1) == set(engine.node_ids)
    assert all(p.verdict() == Verdict.ACCEPT for p in engine.programs.values())


def sweep_small_graphs(graphs, max_n: int):
    for index, graph in enumerate(graphs):
        if not 2 <= graph.n <= max_n or not is_connected(graph):
            continue
        s, k = graph.n - 1, edge_connectivity(graph)
        report, witnesses, _ = run_repetition(graph, s, k, index, 0)
        assert tester_verdict(report) == TesterVerdict.ALL_ACCEPT, index
        assert witnesses == []
        # one above the connectivity, every detection must be a true witness
        report, witnesses, _ = run_repetition(graph, s, k + 1, index, 0)
        assert tester_verdict(report) in (TesterVerdict.ALL_ACCEPT, TesterVerdict.SOME_REJECT)
        for witness in witnesses:
            assert witness.size <= s
            assert cut_size(graph, witness.members) < k + 1


def test_small_graphs_are_never_rejected_at_their_connectivity(atlas_graphs):
    sweep_small_graphs(atlas_graphs, 6)


def test_transcript_is_reproducible(planted):
    first, _, _ = run_repetition(planted, 4, 3, 5, 2)
    second, _, _ = run_repetition(planted, 4, 3, 5, 2)
    assert first.transcript_hash == second.transcript_hash


def test_report_requires_witness_for_reject():
    with pytest.raises(ValidationError):
        KConnReport(verdict=TesterVerdict.SOME_REJECT, s=2, k=2, n=5, reps_scheduled=1, reps_run=1,
                    rounds_total=8, rounds_per_rep=[8], round_bound_per_rep=8, max_message_bits=10,
                    budget_bits=24, master_seed=1)


def test_preconditions(circulant):
    with pytest.raises(DomainError):
        run_kconn_test(circulant, 16, 4, 1)
    with pytest.raises(DomainError):
        run_kconn_test(circulant, 4, 0, 1)


@pytest.mark.slow
def test_planted_instances_reject_over_full_schedule(planted):
    rejecting = 0
    for master_seed in range(60):
        report = run_kconn_test(planted, 4, 3, master_seed)
        if report.verdict == TesterVerdict.SOME_REJECT:
            rejecting += 1
            assert report.witness.size <= 4
            assert report.witness.cut_size < 3
    assert rejecting >= 40


@pytest.mark.slow
def test_circulant_instances_accept_over_full_schedule(circulant):
    for master_seed in range(60):
        assert run_kconn_test(circulant, 4, 4, master_seed).verdict == TesterVerdict.ALL_ACCEPT


@pytest.mark.slow
def test_every_graph_up_to_seven_vertices(atlas_graphs):
    sweep_small_graphs(atlas_graphs, 7)
