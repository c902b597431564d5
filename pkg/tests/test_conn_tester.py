import math

import networkx as nx
import pytest

from StochasticTester.congest import TesterVerdict, Verdict, default_budget
from StochasticTester.graph import Graph
from StochasticTester.plugins.Conn_Tester import conn_program, conn_semantic_oracle, run_conn_test
from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.rng import make_rng
from conftest import cycle_graph, disjoint_cycles


def verdict_of(graph: Graph, s: int, seed: int = 1) -> TesterVerdict:
    return TesterVerdict(run_conn_test(graph, s, seed).extras['tester_verdict'])


def test_connected_cycle_accepts():
    report = run_conn_test(cycle_graph(10), 3, 5)
    assert report.extras['tester_verdict'] == TesterVerdict.ALL_ACCEPT.value
    assert all(v == Verdict.ACCEPT for v in report.verdicts.values())
    assert report.rounds_used <= 4 * 3 + 8


@pytest.mark.parametrize('s, expected', [
    (2, TesterVerdict.ALL_ACCEPT),
    (3, TesterVerdict.SOME_REJECT),
    (7, TesterVerdict.SOME_REJECT),
    (10, TesterVerdict.SOME_REJECT),
])
def test_two_components(s, expected):
    graph = disjoint_cycles(3, 7)
    assert conn_semantic_oracle(graph, s) == expected
    for seed in range(4):
        assert verdict_of(graph, s, seed) == expected


def test_component_of_exactly_s_nodes():
    # every member of the triangle is adjacent to the last node visited
    graph = Graph(5, [(0, 1), (0, 2), (1, 2), (3, 4)])
    for seed in range(8):
        assert verdict_of(graph, 3, seed) == TesterVerdict.SOME_REJECT


def test_single_vertex_and_isolated_vertices():
    assert verdict_of(Graph(1), 1) == TesterVerdict.ALL_ACCEPT
    assert verdict_of(Graph.edgeless(4), 1) == TesterVerdict.SOME_REJECT
    assert verdict_of(Graph.complete(6), 6) == TesterVerdict.ALL_ACCEPT


def test_s_outside_range():
    with pytest.raises(DomainError):
        conn_program(0, 5)
    with pytest.raises(DomainError):
        run_conn_test(cycle_graph(5), 6, 1)


@pytest.mark.parametrize('graph, s', [
    (disjoint_cycles(3, 7), 2),
    (disjoint_cycles(3, 7), 3),
    (disjoint_cycles(1, 4, 5), 4),
    (cycle_graph(9), 4),
    (Graph.from_networkx(nx.star_graph(6)), 3),
    (Graph.from_networkx(nx.path_graph(8)), 8),
])
def test_verdict_does_not_depend_on_node_ids(graph, s):
    expected = conn_semantic_oracle(graph, s)
    layouts = set()
    for seed in range(8):
        report = run_conn_test(graph, s, seed)
        layouts.add(tuple(report.node_ids))
        assert TesterVerdict(report.extras['tester_verdict']) == expected, seed
    assert len(layouts) > 1


def test_run_is_reproducible():
    graph = disjoint_cycles(4, 9)
    assert run_conn_test(graph, 4, 3).transcript_hash == run_conn_test(graph, 4, 3).transcript_hash


def random_cases(count: int, seed: int):
    rng = make_rng(seed, 'conn-cases')
    for i in range(count):
        n = int(rng.integers(2, 41))
        p = float(rng.uniform(0, 3.0 / n))
        graph = Graph.from_networkx(nx.gnp_random_graph(n, p, seed=int(rng.integers(1 << 31))))
        s = int(rng.integers(1, n + 1))
        yield i, graph, s


def check_against_oracle(count: int, seed: int):
    for i, graph, s in random_cases(count, seed):
        report = run_conn_test(graph, s, i)
        assert TesterVerdict(report.extras['tester_verdict']) == conn_semantic_oracle(graph, s), (i, s)
        assert report.rounds_used <= 4 * s + 8
        assert report.max_message_bits <= default_budget(graph.n) == 8 * max(1, math.ceil(math.log2(graph.n)))


def test_matches_oracle_on_random_graphs():
    check_against_oracle(60, 2)


@pytest.mark.slow
def test_matches_oracle_on_500_random_graphs():
    check_against_oracle(500, 7)
