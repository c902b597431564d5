import math

import pytest
from pydantic import ValidationError

from StochasticTester.graph import component_sizes, cut_size, edge_connectivity, is_k_connected
from StochasticTester.plugins.Experiment_Harness import (
    ROW_HEADER,
    ExperimentRow,
    InstanceSpec,
    component_edges,
    experiment_appendix,
    experiment_g1_vs_g2,
    experiment_lemma31_scaling,
    experiment_lemma51,
    experiment_processes,
    experiment_round_counts,
    generate,
    metadata_path,
    resolve_size,
    run_experiment,
    write_metadata,
)
from StochasticTester.plugins.KConn_Tester import WindowSchedule
from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.files import load_json
from StochasticTester.utils.stats import binomial_sigma


def test_two_cliques():
    graph = generate(InstanceSpec(family='two-cliques', n=20, sizes=[3, 17]))
    assert component_sizes(graph) == [3, 17]
    assert graph.m == 3 + 17 * 16 // 2
    halves = generate(InstanceSpec(family='two-cliques', n=11, shape='cycle'))
    assert component_sizes(halves) == [5, 6]
    assert halves.m == 11


def test_many_cliques_and_edgeless():
    assert component_sizes(generate(InstanceSpec(family='many-cliques', n=10, parts=3))) == [3, 3, 4]
    assert component_sizes(generate(InstanceSpec(family='many-cliques', n=6, sizes=[1, 2, 3]))) == [1, 2, 3]
    assert generate(InstanceSpec(family='edgeless', n=4)).m == 0


def test_component_edges_small_cycles():
    assert component_edges(5, 2, 'cycle') == [(5, 6)]
    assert component_edges(5, 1, 'cycle') == []
    assert len(component_edges(0, 4, 'clique')) == 6


def test_planted_witness():
    graph = generate(InstanceSpec(family='planted-witness', n=20, s=4, k=3))
    assert cut_size(graph, range(4)) == 2
    assert not is_k_connected(graph, 3)
    cycle_bulk = generate(InstanceSpec(family='planted-witness', n=14, s=3, k=4, bulk='circulant'))
    assert cut_size(cycle_bulk, range(3)) == 3


def test_circulant():
    graph = generate(InstanceSpec(family='circulant-kconn', n=16, k=4))
    assert edge_connectivity(graph) == 4
    assert graph.m == 32


def test_erdos_renyi_is_reproducible():
    spec = InstanceSpec(family='erdos-renyi', n=30, p=0.2, seed=4)
    assert generate(spec) == generate(spec)
    assert generate(InstanceSpec(family='erdos-renyi', n=30, p=1.0)).m == 30 * 29 // 2


@pytest.mark.parametrize('spec', [
    InstanceSpec(family='two-cliques', n=10, sizes=[3, 4]),
    InstanceSpec(family='two-cliques', n=10, sizes=[3, 3, 4]),
    InstanceSpec(family='many-cliques', n=10),
    InstanceSpec(family='many-cliques', n=3, sizes=[0, 3]),
    InstanceSpec(family='planted-witness', n=5, s=3, k=3),
    InstanceSpec(family='planted-witness', n=10, s=10, k=2),
    InstanceSpec(family='circulant-kconn', n=3, k=3),
    InstanceSpec(family='circulant-kconn', n=8),
    InstanceSpec(family='erdos-renyi', n=8),
])
def test_invalid_parameters(spec):
    with pytest.raises(DomainError):
        generate(spec)


def test_spec_validation_and_digest():
    with pytest.raises(ValidationError):
        InstanceSpec(family='two-cliques', n=0)
    with pytest.raises(ValidationError):
        InstanceSpec(family='hypercube', n=8)
    spec = InstanceSpec(family='two-cliques', n=10, sizes=[3, 7])
    assert spec.digest() == InstanceSpec(family='two-cliques', n=10, sizes=[3, 7]).digest()
    assert spec.digest() != InstanceSpec(family='two-cliques', n=10, sizes=[3, 7], seed=1).digest()
    assert len(spec.digest()) == 16


def test_row_matches_header():
    row = ExperimentRow(experiment='g1g2', label='G1', n=10, t=2.5, seed=1)
    cells = row.to_csv_row()
    assert len(cells) == len(ROW_HEADER)
    assert cells[ROW_HEADER.index('t')] == '2.5'
    assert cells[ROW_HEADER.index('failures')] == ''
    assert row.sigma == 0.0


def test_resolve_size():
    assert resolve_size(100, 0.1) == 10
    assert resolve_size(100, 2) == 2
    assert resolve_size(10, 0.01) == 1
    with pytest.raises(DomainError):
        resolve_size(10, 0)


def test_g1_vs_g2():
    n, trials = 100, 200
    rows = experiment_g1_vs_g2(n, trials, 3)
    assert {row.hamming for row in rows} == {1}
    by_label = {(row.label, row.t): row for row in rows}
    t = float(math.ceil(4 * math.log(n)))
    assert by_label[('G2', t)].failures < by_label[('G1', t)].failures
    for label in ('G1', 'G2'):
        full = max((row for row in rows if row.label == label), key=lambda row: row.t)
        assert full.failures == 0
    with pytest.raises(DomainError):
        experiment_g1_vs_g2(15, trials, 3)


def test_lemma31_scaling():
    rows = experiment_lemma31_scaling([20], [2, 0.5, 15], 200, 5)
    assert [row.label for row in rows] == ['threshold', 'upper', 'tightness'] * 2
    assert sorted({row.s for row in rows}) == [2, 10]
    for row in rows:
        if row.label == 'threshold':
            assert row.bound == pytest.approx(1 / 20)
            assert row.normalized == pytest.approx(row.threshold * row.s / (20 * math.log(20)))
        else:
            assert row.experiment == ('lemma31' if row.label == 'upper' else 'lemma31-tightness')
            assert 0 <= row.failure_rate <= 1


def test_round_counts():
    rows = experiment_round_counts(2, conn_n=16, conn_s=(2, 4), kconn_n=10, kconn_k=3, kconn_s=(2, 3))
    conn = [row for row in rows if row.experiment == 'rounds-conn' and row.label != 'fit']
    kconn = [row for row in rows if row.experiment == 'rounds-kconn' and row.label != 'fit']
    assert [row.s for row in conn] == [2, 4]
    assert all(row.label == 'AllAccept' and row.rounds <= row.bound for row in conn)
    assert all(row.label == 'AllAccept' for row in kconn)
    assert [row.rounds for row in kconn] == [WindowSchedule(2).end, WindowSchedule(3).end]
    assert len([row for row in rows if row.label == 'fit']) == 2


def test_lemma51():
    trials = 2000
    rows = experiment_lemma51(trials, 7)
    planted, path = rows
    assert planted.label == 'planted-K4'
    assert planted.frequency >= planted.bound
    assert path.family == 'path'
    assert abs(path.frequency - 0.5) <= 4 * binomial_sigma(0.5, trials)


def test_appendix():
    rows = experiment_appendix(16, 300, 4, t=4.0)
    assert [row.label for row in rows] == ['single', 'union-m2', 'one-draw-2t']
    single, union, _ = rows
    assert union.bound == pytest.approx(single.failure_rate ** 2)
    assert union.failures <= single.failures
    with pytest.raises(DomainError):
        experiment_appendix(16, 300, 4, m=1, t=4.0)


def test_processes():
    rows = experiment_processes(40, 6, n=12, s=3, k=2)
    assert [row.label for row in rows] == ['A-iterative-adaptive', 'B-iterative-fixed', 'C-one-shot']
    assert all(row.trials == 40 and 0 <= row.failures <= 40 for row in rows)
    assert all(row.s == 3 for row in rows)


def test_rows_are_reproducible():
    first = [row.to_csv_row() for row in experiment_appendix(16, 200, 9, t=3.0)]
    second = [row.to_csv_row() for row in experiment_appendix(16, 200, 9, t=3.0)]
    assert first == second


def test_metadata_sidecar(tmp_path):
    out = tmp_path / 'lemma51.csv'
    rows, wall_time = run_experiment('lemma51', experiment_lemma51, trials=50, seed=1)
    write_metadata(str(out), 'lemma51', {'trials': 50, 'seed': 1, 'n': (20,)}, rows, wall_time)
    assert metadata_path(str(out)) == tmp_path / 'lemma51.csv.meta.json'
    meta = load_json(metadata_path(str(out)))
    assert meta['experiment'] == 'lemma51'
    assert meta['rows'] == 2
    assert meta['params']['n'] == [20]
    assert meta['config']['c_const'] == 2.0
