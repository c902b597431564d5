from typing import Optional

import click

from StochasticTester.command import (
    emit_csv,
    emit_json,
    log_resolved_config,
    on_command,
    out_option,
    resolve_threads,
    resolve_trials,
    seed_option,
    threads_option,
)
from StochasticTester.config import PluginMetadata
from StochasticTester.graph import load_graph
from StochasticTester.utils import logger
from .bounds import (
    failure_target,
    lemma31_probability,
    lemma44_probability,
    t_from_probability,
    theorem41_probability,
    tightness_probability,
)
from .estimate import (
    count_events,
    estimate_failure,
    estimate_sampler_failure,
    geometric_grid,
    threshold_search,
    trial_seed,
)
from .models import CSV_HEADER, AugmentParams, ProcessVariant, TrialStats
from .process import augment, iterative_process, random_addition, repeated_union, sample_additions

__plugin_meta__ = PluginMetadata(
    name='Random augmentation',
    description='Add(G, t) and Monte-Carlo estimates of its failure probability',
    usage='estimate / threshold',
    extra={
        'priority': 1,
    }
)


@on_command('estimate', state={
    'pm_name':        'estimate',
    'pm_description': 'failure rate of Add(G, t) for k-connectivity, one CSV row',
    'pm_usage':       'estimate --graph g.txt --k 1 --t 12 --trials 1000 --seed 7',
    'pm_priority':    1
})
@click.option('--graph', 'graph_path', required=True, type=click.Path(dir_okay=False))
@click.option('--k', type=click.IntRange(min=1), required=True)
@click.option('--t', type=click.FloatRange(min=0), required=True)
@click.option('--trials', type=click.IntRange(min=1), default=None)
@seed_option
@threads_option
@out_option
def estimate_cmd(graph_path: str, k: int, t: float, trials: Optional[int], seed: int, threads: Optional[int],
                 out: Optional[str]):
    graph = load_graph(graph_path)
    trials, threads = resolve_trials(trials), resolve_threads(threads)
    log_resolved_config('estimate', graph=graph_path, k=k, t=t, trials=trials, seed=seed, threads=threads)
    stats = estimate_failure(graph, k, t, trials, seed, threads, progress=True)
    logger.success('estimate', '', {'failures': stats.failures, 'trials': stats.trials,
                                    'wilson_upper95': f'{stats.wilson_upper95:.6g}'})
    emit_csv(CSV_HEADER, [stats.to_csv_row()], out)


@on_command('threshold', state={
    'pm_name':        'threshold',
    'pm_description': 'smallest grid t whose failure rate is at most the target',
    'pm_usage':       'threshold --graph g.txt --k 1 --target 0.01 --trials 2000 --seed 7',
    'pm_priority':    2
})
@click.option('--graph', 'graph_path', required=True, type=click.Path(dir_okay=False))
@click.option('--k', type=click.IntRange(min=1), required=True)
@click.option('--target', type=float, required=True, help='target failure probability in (0, 1)')
@click.option('--trials', type=click.IntRange(min=1), default=None)
@seed_option
@threads_option
@out_option
def threshold_cmd(graph_path: str, k: int, target: float, trials: Optional[int], seed: int,
                  threads: Optional[int], out: Optional[str]):
    graph = load_graph(graph_path)
    trials, threads = resolve_trials(trials), resolve_threads(threads)
    log_resolved_config('threshold', graph=graph_path, k=k, target=target, trials=trials, seed=seed,
                        threads=threads)
    t = threshold_search(graph, k, target, trials, seed, threads, progress=True)
    emit_json({'n': graph.n, 'k': k, 'target_failure': target, 'threshold': t, 'non_edge_count': graph.non_edge_count,
               'trials': trials, 'seed': seed}, out)


__all__ = [
    'AugmentParams',
    'CSV_HEADER',
    'ProcessVariant',
    'TrialStats',
    'augment',
    'count_events',
    'estimate_failure',
    'estimate_sampler_failure',
    'failure_target',
    'geometric_grid',
    'iterative_process',
    'lemma31_probability',
    'lemma44_probability',
    'random_addition',
    'repeated_union',
    'sample_additions',
    't_from_probability',
    'theorem41_probability',
    'threshold_search',
    'tightness_probability',
    'trial_seed',
]
