from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence

import click

from StochasticTester.command import (
    emit_csv,
    log_resolved_config,
    on_command,
    out_option,
    resolve_threads,
    resolve_trials,
    seed_option,
    threads_option,
)
from StochasticTester.config import PluginMetadata, config
from StochasticTester.graph import format_graph, save_graph
from StochasticTester.utils import logger
from StochasticTester.utils.typing import ExperimentTag
from .experiments import (
    ARTIFACT_NOTE,
    experiment_appendix,
    experiment_g1_vs_g2,
    experiment_lemma31_scaling,
    experiment_lemma51,
    experiment_processes,
    experiment_round_counts,
    metadata_path,
    resolve_size,
    run_experiment,
    stats_row,
    write_metadata,
)
from .generators import GENERATORS, bulk_edges, component_edges, generate
from .models import ROW_HEADER, ExperimentRow, InstanceSpec

__plugin_meta__ = PluginMetadata(
    name='Experiment harness',
    description='instance generators and the experiment drivers, CSV rows plus a JSON sidecar',
    usage='gen / exp-g1g2 / exp-lemma31 / exp-rounds / exp-appendix / exp-lemma51 / exp-processes',
    extra={
        'priority': 4,
    }
)


def _int_list(ctx, param, value: Optional[str]) -> Optional[List[int]]:
    if value is None:
        return None
    try:
        return [int(part) for part in value.split(',') if part.strip()]
    except ValueError:
        raise click.BadParameter('comma separated integers expected') from None


def _float_list(ctx, param, value: Optional[str]) -> Optional[List[float]]:
    if value is None:
        return None
    try:
        return [float(part) for part in value.split(',') if part.strip()]
    except ValueError:
        raise click.BadParameter('comma separated numbers expected') from None


def save_option(func: Callable) -> Callable:
    return click.option('--save', is_flag=True, default=False,
                        help='write to the configured output directory when --out is omitted')(func)


def _finish(tag: ExperimentTag, driver: Callable[..., List[ExperimentRow]], out: Optional[str], save: bool,
            **params: Any):
    if save and not out:
        out = str(Path(config.output_dir) / f'{tag}-seed{params["seed"]}.csv')
    log_resolved_config(f'exp-{tag}', out=out, **params)
    rows, wall_time = run_experiment(tag, driver, **params)
    emit_csv(ROW_HEADER, [row.to_csv_row() for row in rows], out)
    if out:
        write_metadata(out, tag, params, rows, wall_time)


@on_command('gen', state={
    'pm_name':        'gen',
    'pm_description': 'generate a self-checked instance and write it as a graph file',
    'pm_usage':       'gen --family two-cliques --n 20 --sizes 3,17 --out g.txt',
    'pm_priority':    1
})
@click.option('--family', type=click.Choice(sorted(GENERATORS)), required=True)
@click.option('--n', type=click.IntRange(min=1), required=True)
@click.option('--sizes', default=None, callback=_int_list, help='component sizes, comma separated')
@click.option('--parts', type=click.IntRange(min=1), default=None, help='equal components of many-cliques')
@click.option('--s', type=click.IntRange(min=1), default=None)
@click.option('--k', type=click.IntRange(min=1), default=None)
@click.option('--p', type=click.FloatRange(0, 1), default=None)
@click.option('--shape', type=click.Choice(['clique', 'cycle']), default='clique')
@click.option('--bulk', type=click.Choice(['clique', 'circulant']), default='clique')
@click.option('--seed', type=int, default=0, help='only erdos-renyi is random')
@out_option
def gen_cmd(family: str, n: int, sizes: Optional[List[int]], parts: Optional[int], s: Optional[int],
            k: Optional[int], p: Optional[float], shape: str, bulk: str, seed: int, out: Optional[str]):
    spec = InstanceSpec(family=family, n=n, sizes=sizes, parts=parts, s=s, k=k, p=p, shape=shape, bulk=bulk,
                        seed=seed)
    log_resolved_config('gen', **spec.canonical())
    graph = generate(spec)
    if out:
        save_graph(graph, out)
        logger.success('gen', '', {'n': graph.n, 'm': graph.m, 'digest': spec.digest(), 'out': out})
    else:
        click.echo(format_graph(graph), nl=False)


@on_command('exp-g1g2', state={
    'pm_name':        'exp-g1g2',
    'pm_description': 'small component against two halves at equal Hamming distance',
    'pm_usage':       'exp-g1g2 --n 100 --trials 5000 --seed 1',
    'pm_priority':    2
})
@click.option('--n', type=click.IntRange(min=16), default=100)
@click.option('--shape', type=click.Choice(['clique', 'cycle']), default='cycle')
@click.option('--trials', type=click.IntRange(min=1), default=None)
@seed_option
@threads_option
@out_option
@save_option
def exp_g1g2_cmd(n: int, shape: str, trials: Optional[int], seed: int, threads: Optional[int], out: Optional[str],
                 save: bool):
    _finish('g1g2', experiment_g1_vs_g2, out, save, n=n, trials=resolve_trials(trials), seed=seed,
            threads=resolve_threads(threads), shape=shape)


@on_command('exp-lemma31', state={
    'pm_name':        'exp-lemma31',
    'pm_description': 'threshold scaling in n and s with upper-bound and tightness rows',
    'pm_usage':       'exp-lemma31 --n 50,100,200 --s 2,0.1,0.5 --trials 10000 --seed 1',
    'pm_priority':    3
})
@click.option('--n', 'n_list', default='50,100', callback=_int_list)
@click.option('--s', 's_list', default='2,0.1,0.5', callback=_float_list,
              help='minimum component sizes, values below 1 are fractions of n')
@click.option('--c', type=click.FloatRange(min=1, min_open=True), default=None)
@click.option('--trials', type=click.IntRange(min=1), default=None)
@seed_option
@threads_option
@out_option
@save_option
def exp_lemma31_cmd(n_list: List[int], s_list: List[float], c: Optional[float], trials: Optional[int], seed: int,
                    threads: Optional[int], out: Optional[str], save: bool):
    _finish('lemma31', experiment_lemma31_scaling, out, save, n_list=n_list, s_list=s_list, c=c,
            trials=resolve_trials(trials), seed=seed, threads=resolve_threads(threads))


@on_command('exp-rounds', state={
    'pm_name':        'exp-rounds',
    'pm_description': 'round counts of both testers against s, with growth exponents',
    'pm_usage':       'exp-rounds --seed 1 [--conn-s 4,8,16,32] [--kconn-s 2,4,8]',
    'pm_priority':    4
})
@click.option('--conn-n', type=click.IntRange(min=3), default=64)
@click.option('--conn-s', default='4,8,16,32', callback=_int_list)
@click.option('--kconn-n', type=click.IntRange(min=3), default=16)
@click.option('--kconn-k', type=click.IntRange(min=1), default=4)
@click.option('--kconn-s', default='2,4,8', callback=_int_list)
@seed_option
@out_option
@save_option
def exp_rounds_cmd(conn_n: int, conn_s: Sequence[int], kconn_n: int, kconn_k: int, kconn_s: Sequence[int],
                   seed: int, out: Optional[str], save: bool):
    _finish('rounds', experiment_round_counts, out, save, seed=seed, conn_n=conn_n, conn_s=conn_s,
            kconn_n=kconn_n, kconn_k=kconn_k, kconn_s=kconn_s)


@on_command('exp-appendix', state={
    'pm_name':        'exp-appendix',
    'pm_description': 'union of m draws at t against one draw at t and at m·t',
    'pm_usage':       'exp-appendix --n 16 --trials 20000 --seed 9',
    'pm_priority':    5
})
@click.option('--n', type=click.IntRange(min=2), default=16)
@click.option('--m', type=click.IntRange(min=2), default=2)
@click.option('--t', type=click.FloatRange(min=0), default=None, help='tuned to failure 0.2 when omitted')
@click.option('--trials', type=click.IntRange(min=1), default=None)
@seed_option
@threads_option
@out_option
@save_option
def exp_appendix_cmd(n: int, m: int, t: Optional[float], trials: Optional[int], seed: int, threads: Optional[int],
                     out: Optional[str], save: bool):
    _finish('appendix', experiment_appendix, out, save, n=n, m=m, t=t, trials=resolve_trials(trials), seed=seed,
            threads=resolve_threads(threads))


@on_command('exp-lemma51', state={
    'pm_name':        'exp-lemma51',
    'pm_description': 'frequency of a spanning tree lighter than the cut',
    'pm_usage':       'exp-lemma51 --trials 20000 --seed 3',
    'pm_priority':    6
})
@click.option('--n', type=click.IntRange(min=2), default=20)
@click.option('--s', type=click.IntRange(min=1), default=4)
@click.option('--k', type=click.IntRange(min=1), default=3)
@click.option('--trials', type=click.IntRange(min=1), default=None)
@seed_option
@threads_option
@out_option
@save_option
def exp_lemma51_cmd(n: int, s: int, k: int, trials: Optional[int], seed: int, threads: Optional[int],
                    out: Optional[str], save: bool):
    _finish('lemma51', experiment_lemma51, out, save, n=n, s=s, k=k, trials=resolve_trials(trials), seed=seed,
            threads=resolve_threads(threads))


@on_command('exp-processes', state={
    'pm_name':        'exp-processes',
    'pm_description': 'adaptive, fixed and one-shot augmentation processes on a planted instance',
    'pm_usage':       'exp-processes --n 16 --s 4 --k 3 --trials 5000 --seed 5',
    'pm_priority':    7
})
@click.option('--n', type=click.IntRange(min=4), default=16)
@click.option('--s', type=click.IntRange(min=1), default=4)
@click.option('--k', type=click.IntRange(min=1), default=3)
@click.option('--c', type=click.FloatRange(min=1, min_open=True), default=None)
@click.option('--trials', type=click.IntRange(min=1), default=None)
@seed_option
@threads_option
@out_option
@save_option
def exp_processes_cmd(n: int, s: int, k: int, c: Optional[float], trials: Optional[int], seed: int,
                      threads: Optional[int], out: Optional[str], save: bool):
    _finish('processes', experiment_processes, out, save, n=n, s=s, k=k, c=c, trials=resolve_trials(trials),
            seed=seed, threads=resolve_threads(threads))


__all__ = [
    'ARTIFACT_NOTE',
    'ExperimentRow',
    'GENERATORS',
    'InstanceSpec',
    'ROW_HEADER',
    'bulk_edges',
    'component_edges',
    'experiment_appendix',
    'experiment_g1_vs_g2',
    'experiment_lemma31_scaling',
    'experiment_lemma51',
    'experiment_processes',
    'experiment_round_counts',
    'generate',
    'metadata_path',
    'resolve_size',
    'run_experiment',
    'stats_row',
    'write_metadata',
]
