import json

import pytest

from StochasticTester import PluginManager, main
from StochasticTester.config import config
from StochasticTester.graph import load_graph
from StochasticTester.plugins.Stochastic_Augment import CSV_HEADER
from StochasticTester.utils.files import load_csv


@pytest.fixture
def split_graph(tmp_path):
    path = tmp_path / 'split.txt'
    assert main(['gen', '--family', 'two-cliques', '--n', '10', '--sizes', '3,7', '--out', str(path)]) == 0
    return path


def test_gen_writes_a_graph_file(split_graph):
    graph = load_graph(split_graph)
    assert graph.n == 10
    assert graph.m == 3 + 21


def test_gen_prints_to_stdout(capsys):
    assert main(['gen', '--family', 'circulant-kconn', '--n', '8', '--k', '2']) == 0
    assert capsys.readouterr().out.splitlines()[0] == '8 8'


def test_estimate_prints_one_csv_row(split_graph, capsys):
    assert main(['estimate', '--graph', str(split_graph), '--k', '1', '--t', '21', '--trials', '50',
                 '--seed', '7', '--threads', '1']) == 0
    header, row = capsys.readouterr().out.splitlines()
    assert header.split(',') == list(CSV_HEADER)
    cells = dict(zip(CSV_HEADER, row.split(',')))
    assert cells['trials'] == '50'
    assert cells['failures'] == '0'


def test_set_overrides_for_one_invocation(split_graph, capsys):
    assert main(['--set', 'default_trials=30', 'estimate', '--graph', str(split_graph), '--k', '1', '--t', '2',
                 '--seed', '1']) == 0
    _, row = capsys.readouterr().out.splitlines()
    assert dict(zip(CSV_HEADER, row.split(',')))['trials'] == '30'
    assert config.default_trials == 5000


def test_tester_conn_json(split_graph, capsys):
    assert main(['tester-conn', '--graph', str(split_graph), '--s', '3', '--seed', '2']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['extras']['tester_verdict'] == 'SomeReject'
    assert len(report['verdicts']) == 10


def test_tester_kconn_json(tmp_path, capsys):
    path = tmp_path / 'circulant.txt'
    assert main(['gen', '--family', 'circulant-kconn', '--n', '10', '--k', '3', '--out', str(path)]) == 0
    out = tmp_path / 'report.json'
    assert main(['tester-kconn', '--graph', str(path), '--s', '3', '--k', '3', '--seed', '4', '--reps', '2',
                 '--out', str(out)]) == 0
    report = json.loads(out.read_text())
    assert report['verdict'] == 'AllAccept'
    assert report['reps_run'] == 2


def test_experiment_writes_csv_and_sidecar(tmp_path):
    out = tmp_path / 'appendix.csv'
    assert main(['exp-appendix', '--n', '16', '--t', '4', '--trials', '50', '--seed', '3', '--threads', '1',
                 '--out', str(out)]) == 0
    assert out.read_text().startswith('experiment,label,spec_digest')
    rows = load_csv(out)
    assert [row['label'] for row in rows] == ['single', 'union-m2', 'one-draw-2t']
    assert {row['seed'] for row in rows} == {'3'}
    meta = json.loads((tmp_path / 'appendix.csv.meta.json').read_text())
    assert meta['experiment'] == 'appendix'
    assert meta['params']['seed'] == 3


def test_save_uses_the_output_directory(tmp_path):
    assert main(['--set', f'output_dir={tmp_path}', 'exp-lemma51', '--trials', '20', '--seed', '5',
                 '--threads', '1', '--save']) == 0
    assert (tmp_path / 'lemma51-seed5.csv').exists()
    assert (tmp_path / 'lemma51-seed5.csv.meta.json').exists()


def test_exit_codes(tmp_path, capsys):
    missing = str(tmp_path / 'missing.txt')
    assert main(['tester-conn', '--graph', missing, '--s', '2', '--seed', '1']) == 2
    assert main(['no-such-command']) == 64
    assert main(['gen', '--family', 'edgeless', '--n', '3', '--colour', 'red']) == 64
    assert main(['estimate', '--graph', missing, '--k', '1', '--t', '1']) == 64
    assert main(['--set', 'no_such_item=1', 'gen', '--family', 'edgeless', '--n', '3']) == 2
    assert main(['gen', '--family', 'two-cliques', '--n', '10', '--sizes', '3,4']) == 2
    assert main(['exp-processes', '--n', '24', '--trials', '5', '--seed', '1', '--threads', '1']) == 3


def test_commands_are_registered():
    names = {info.pm_name for plugin in PluginManager.plugins.values() for info in plugin.commands}
    assert {'gen', 'estimate', 'threshold', 'tester-conn', 'tester-kconn', 'exp-g1g2', 'exp-lemma31',
            'exp-rounds', 'exp-appendix', 'exp-lemma51', 'exp-processes'} <= names
