from typing import Optional

import click

from StochasticTester.command import emit_json, log_resolved_config, on_command, out_option, seed_option
from StochasticTester.config import PluginMetadata, config
from StochasticTester.congest import RunReport, run, tester_verdict
from StochasticTester.graph import Graph, load_graph
from StochasticTester.utils import logger
from .oracle import conn_semantic_oracle
from .program import ConnTesterProgram, conn_codec, conn_max_rounds, conn_program

__plugin_meta__ = PluginMetadata(
    name='Connectivity tester',
    description='distributed DFS tester for connectivity in O(s) rounds',
    usage='tester-conn',
    extra={
        'priority': 2,
    }
)


def run_conn_test(graph: Graph, s: int, seed: int, budget_bits: Optional[int] = None, **kwargs) -> RunReport:
    """
    One execution of the connectivity tester
        :param graph: communication graph
        :param s: size parameter, 1 <= s <= n
        :param seed: NodeId permutation and private randomness
        :param kwargs: passed to the round engine
    """
    max_rounds = conn_max_rounds(s, config.conn_alpha, config.conn_beta)
    report = run(graph, conn_program(s, graph.n), max_rounds, budget_bits, seed, **kwargs)
    report.extras.update({'s': s, 'round_bound': max_rounds, 'tester_verdict': tester_verdict(report).value})
    return report


@on_command('tester-conn', state={
    'pm_name':        'tester-conn',
    'pm_description': 'run the connectivity tester, RunReport JSON',
    'pm_usage':       'tester-conn --graph g.txt --s 5 --seed 1',
    'pm_priority':    1
})
@click.option('--graph', 'graph_path', required=True, type=click.Path(dir_okay=False))
@click.option('--s', type=click.IntRange(min=1), required=True)
@seed_option
@out_option
def tester_conn_cmd(graph_path: str, s: int, seed: int, out: Optional[str]):
    graph = load_graph(graph_path)
    log_resolved_config('tester-conn', graph=graph_path, s=s, seed=seed)
    report = run_conn_test(graph, s, seed)
    logger.success('tester-conn', '', {'verdict': report.extras['tester_verdict'], 'rounds': report.rounds_used})
    emit_json(report.to_json(), out)


__all__ = [
    'ConnTesterProgram',
    'conn_codec',
    'conn_max_rounds',
    'conn_program',
    'conn_semantic_oracle',
    'run_conn_test',
]
