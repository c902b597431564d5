from typing import Optional

import click

from StochasticTester.command import emit_json, log_resolved_config, on_command, out_option, seed_option
from StochasticTester.config import PluginMetadata
from StochasticTester.graph import load_graph
from StochasticTester.utils import logger
from .models import KConnReport, RepetitionOutcome
from .program import KConnProgram, alive_roots, count_cap, kconn_codec, kconn_program, witness_candidates
from .schedule import RepetitionSchedule, WindowSchedule, kconn_max_rounds, rep_seed, weighting_for_rep
from .sequential import find_tree_event_seed, lemma51_frequency, sequential_witness_search, tree_event_holds
from .tester import run_kconn_test, run_repetition, verify_witnesses
from .weights import EdgeKey, EdgeWeighting

__plugin_meta__ = PluginMetadata(
    name='k-connectivity tester',
    description='distributed cluster growth with shared random edge costs',
    usage='tester-kconn',
    extra={
        'priority': 3,
    }
)


@on_command('tester-kconn', state={
    'pm_name':        'tester-kconn',
    'pm_description': 'run the k-connectivity tester over its repetition schedule, JSON',
    'pm_usage':       'tester-kconn --graph g.txt --s 4 --k 3 --seed 1 [--reps 20]',
    'pm_priority':    1
})
@click.option('--graph', 'graph_path', required=True, type=click.Path(dir_okay=False))
@click.option('--s', type=click.IntRange(min=1), required=True)
@click.option('--k', type=click.IntRange(min=1), required=True)
@click.option('--reps', type=click.IntRange(min=1), default=None, help='repetitions, the schedule by default')
@click.option('--all-reps', is_flag=True, default=False, help='keep going after a rejecting repetition')
@seed_option
@out_option
def tester_kconn_cmd(graph_path: str, s: int, k: int, reps: Optional[int], all_reps: bool, seed: int,
                     out: Optional[str]):
    graph = load_graph(graph_path)
    log_resolved_config('tester-kconn', graph=graph_path, s=s, k=k, reps=reps, seed=seed, all_reps=all_reps)
    report = run_kconn_test(graph, s, k, seed, reps=reps, stop_on_reject=not all_reps)
    logger.success('tester-kconn', '', {'verdict': report.verdict.value, 'reps': report.reps_run,
                                        'rounds': report.rounds_total})
    emit_json(report.to_json(), out)


__all__ = [
    'EdgeKey',
    'EdgeWeighting',
    'KConnProgram',
    'KConnReport',
    'RepetitionOutcome',
    'RepetitionSchedule',
    'WindowSchedule',
    'alive_roots',
    'count_cap',
    'find_tree_event_seed',
    'kconn_codec',
    'kconn_max_rounds',
    'kconn_program',
    'lemma51_frequency',
    'rep_seed',
    'run_kconn_test',
    'run_repetition',
    'sequential_witness_search',
    'tree_event_holds',
    'verify_witnesses',
    'weighting_for_rep',
    'witness_candidates',
]
