"""
Experiment drivers. Each driver returns its rows in parameter order, so the same
(tag, instance spec, seed) always produces the same CSV bytes; wall time goes to the
metadata sidecar only.
"""
import math
import time
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from StochasticTester.config import config
from StochasticTester.congest import tester_verdict
from StochasticTester.graph import Graph, format_graph, hamming_additions_to_connected, s_k_oracle
from StochasticTester.plugins.Conn_Tester import conn_max_rounds, run_conn_test
from StochasticTester.plugins.KConn_Tester import WindowSchedule, lemma51_frequency, run_repetition
from StochasticTester.plugins.Stochastic_Augment import (
    ProcessVariant,
    TrialStats,
    estimate_failure,
    estimate_sampler_failure,
    iterative_process,
    lemma31_probability,
    repeated_union,
    t_from_probability,
    threshold_search,
    tightness_probability,
)
from StochasticTester.utils import __version__, logger
from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.files import save_json
from StochasticTester.utils.rng import digest64
from StochasticTester.utils.stats import fit_exponent
from StochasticTester.utils.typing import ExperimentTag
from .generators import generate
from .models import ExperimentRow, InstanceSpec

ARTIFACT_NOTE = 'grids and trial counts are artifact choices, not values taken from a published table'


def stats_row(experiment: ExperimentTag, label: str, spec: InstanceSpec, stats: TrialStats,
              **extra: Any) -> ExperimentRow:
    return ExperimentRow(experiment=experiment,
                         label=label,
                         spec_digest=spec.digest(),
                         family=spec.family,
                         n=stats.n,
                         s=stats.s,
                         k=stats.k,
                         t=stats.t,
                         trials=stats.trials,
                         failures=stats.failures,
                         failure_rate=stats.failure_rate,
                         wilson_upper95=stats.wilson_upper95,
                         seed=stats.seed,
                         **extra)


def graph_digest(graph: Graph) -> str:
    return f'{digest64(format_graph(graph)):016x}'


def resolve_size(n: int, value: float) -> int:
    """A value below 1 is a fraction of n, anything else an absolute size"""
    if value <= 0:
        raise DomainError(f'size {value}', 'size > 0')
    if value < 1:
        return max(1, round(value * n))
    return int(value)


def experiment_g1_vs_g2(n: int, trials: int, seed: int, threads: int = 1, shape: str = 'cycle',
                        progress: bool = False) -> List[ExperimentRow]:
    """
    A constant-size component against two halves, at equal Hamming distance 1
        :param n: even, at least 16
        :param shape: component shape, sparse cycles keep |Ē| of order n²
    """
    if n < 16 or n % 2:
        raise DomainError(f'n={n}', 'n >= 16 and even')
    log_n = math.log(n)
    specs = {
        'G1': InstanceSpec(family='two-cliques', n=n, sizes=[3, n - 3], shape=shape, seed=seed),
        'G2': InstanceSpec(family='two-cliques', n=n, sizes=[n // 2, n // 2], shape=shape, seed=seed),
    }
    rows = []
    for label, spec in specs.items():
        graph = generate(spec)
        hamming = hamming_additions_to_connected(graph)
        grid = sorted({math.ceil(log_n), math.ceil(4 * log_n), math.ceil(n * log_n / 8), graph.non_edge_count})
        for t in tqdm(grid, desc=label, disable=not progress, leave=False):
            stats = estimate_failure(graph, 1, min(float(t), graph.non_edge_count), trials, seed, threads,
                                     family=spec.family, s=min(spec.sizes))
            rows.append(stats_row('g1g2', label, spec, stats, hamming=hamming))
    return rows


def experiment_lemma31_scaling(n_list: Iterable[int], s_list: Iterable[float], trials: int, seed: int,
                               threads: int = 1, c: Optional[float] = None,
                               progress: bool = False) -> List[ExperimentRow]:
    """
    Threshold for failure 1/n on two-component instances, with the upper-bound and tightness rows
        :param s_list: minimum component sizes, values below 1 are fractions of n
        :param c: the w.h.p. constant, the configured one by default
    """
    c = config.c_const if c is None else c
    rows = []
    cases = sorted({(n, resolve_size(n, s)) for n in n_list for s in s_list})
    for n, s in tqdm(cases, desc='lemma31', disable=not progress, leave=False):
        if 2 * s > n:
            logger.warning('Lemma31 scaling', f'skip n=<m>{n}</m> s=<m>{s}</m>', 'the smaller side exceeds n/2')
            continue
        spec = InstanceSpec(family='two-cliques', n=n, sizes=[s, n - s], shape='cycle', seed=seed)
        graph = generate(spec)
        non_edges = graph.non_edge_count
        threshold = threshold_search(graph, 1, 1 / n, trials, seed, threads)
        rows.append(ExperimentRow(experiment='lemma31', label='threshold', spec_digest=spec.digest(),
                                  family=spec.family, n=n, s=s, k=1, trials=trials, seed=seed,
                                  bound=1 / n, threshold=threshold,
                                  normalized=threshold * s / (n * math.log(n))))

        upper_t = t_from_probability(lemma31_probability(n, s, c), non_edges)
        stats = estimate_failure(graph, 1, upper_t, trials, seed, threads, family=spec.family, s=s)
        rows.append(stats_row('lemma31', 'upper', spec, stats, bound=float(n) ** (-c)))

        tight_t = t_from_probability(tightness_probability(n, s, c), non_edges)
        stats = estimate_failure(graph, 1, tight_t, trials, seed, threads, family=spec.family, s=s)
        rows.append(stats_row('lemma31-tightness', 'tightness', spec, stats, bound=float(n) ** (-c / 2)))
    return rows


def _fit_row(experiment: ExperimentTag, spec: InstanceSpec, sizes: Sequence[int], rounds: Sequence[int],
             seed: int) -> Optional[ExperimentRow]:
    if len(sizes) < 2:
        return None
    return ExperimentRow(experiment=experiment, label='fit', spec_digest=spec.digest(), family=spec.family,
                         n=spec.n, k=spec.k, exponent=fit_exponent(sizes, rounds), seed=seed)


def experiment_round_counts(seed: int,
                            conn_n: int = 64,
                            conn_s: Sequence[int] = (4, 8, 16, 32),
                            kconn_n: int = 16,
                            kconn_k: int = 4,
                            kconn_s: Sequence[int] = (2, 4, 8)) -> List[ExperimentRow]:
    """
    rounds_used against s for both testers, with log-log growth exponents
        :param conn_n: size of the cycle the connectivity tester runs on
        :param kconn_n: size of the circulant k-connected instance, one repetition per s
    """
    rows = []
    conn_spec = InstanceSpec(family='circulant-kconn', n=conn_n, k=2, seed=seed)
    graph = generate(conn_spec)
    conn_s = sorted(set(conn_s))
    conn_rounds = []
    for s in conn_s:
        report = run_conn_test(graph, s, seed)
        conn_rounds.append(report.rounds_used)
        rows.append(ExperimentRow(experiment='rounds-conn', label=report.extras['tester_verdict'],
                                  spec_digest=conn_spec.digest(), family=conn_spec.family, n=conn_n, s=s, k=1,
                                  rounds=report.rounds_used,
                                  bound=float(conn_max_rounds(s, config.conn_alpha, config.conn_beta)), seed=seed))
    if fit := _fit_row('rounds-conn', conn_spec, conn_s, conn_rounds, seed):
        rows.append(fit)

    kconn_spec = InstanceSpec(family='circulant-kconn', n=kconn_n, k=kconn_k, seed=seed)
    graph = generate(kconn_spec)
    kconn_s = sorted(set(kconn_s))
    kconn_rounds = []
    for s in kconn_s:
        report, _, _ = run_repetition(graph, s, kconn_k, seed, 0)
        kconn_rounds.append(report.rounds_used)
        rows.append(ExperimentRow(experiment='rounds-kconn', label=tester_verdict(report).value,
                                  spec_digest=kconn_spec.digest(), family=kconn_spec.family, n=kconn_n, s=s,
                                  k=kconn_k, rounds=report.rounds_used,
                                  bound=float(WindowSchedule(s, config.kconn_window_slack).end), seed=seed))
    if fit := _fit_row('rounds-kconn', kconn_spec, kconn_s, kconn_rounds, seed):
        rows.append(fit)
    return rows


def experiment_appendix(n: int, trials: int, seed: int, threads: int = 1, m: int = 2,
                        t: Optional[float] = None, target: float = 0.2) -> List[ExperimentRow]:
    """
    One draw at t against the union of m draws at t and one draw at m·t
        :param n: even, two cliques of n/2
        :param t: tuned by a threshold search for the target failure when omitted
    """
    if m < 2:
        raise DomainError(f'm={m}', 'm >= 2')
    spec = InstanceSpec(family='two-cliques', n=n, seed=seed)
    graph = generate(spec)
    if t is None:
        t = threshold_search(graph, 1, target, max(trials // 10, 200), seed, threads)
    s = min(spec.n // 2, spec.n - spec.n // 2)
    single = estimate_failure(graph, 1, t, trials, seed, threads, family=spec.family, s=s)
    union = estimate_sampler_failure(graph, 1, lambda sub: repeated_union(graph, t, m, sub), t, trials, seed,
                                     threads, family=spec.family, s=s)
    double = estimate_failure(graph, 1, m * t, trials, seed, threads, family=spec.family, s=s)
    return [
        stats_row('appendix', 'single', spec, single),
        stats_row('appendix', f'union-m{m}', spec, union, bound=single.failure_rate ** m),
        stats_row('appendix', f'one-draw-{m}t', spec, double, bound=union.failure_rate),
    ]


def experiment_lemma51(trials: int, seed: int, threads: int = 1, n: int = 20, s: int = 4,
                       k: int = 3) -> List[ExperimentRow]:
    """Tree-event frequency on a planted clique witness and on the two-node path case"""
    spec = InstanceSpec(family='planted-witness', n=n, s=s, k=k, seed=seed)
    graph = generate(spec)
    frequency = lemma51_frequency(graph, range(s), k, trials, seed, threads)
    rows = [ExperimentRow(experiment='lemma51', label=f'planted-K{s}', spec_digest=spec.digest(),
                          family=spec.family, n=n, s=s, k=k, trials=trials, frequency=frequency,
                          bound=0.25 * s ** (-2 * (1 - 1 / k)), seed=seed)]

    path = Graph(3, [(0, 1), (1, 2)])
    frequency = lemma51_frequency(path, [0, 1], 2, trials, seed, threads)
    rows.append(ExperimentRow(experiment='lemma51', label='two-path', spec_digest=graph_digest(path),
                              family='path', n=3, s=2, k=2, trials=trials, frequency=frequency, bound=0.5,
                              seed=seed))
    return rows


def experiment_processes(trials: int, seed: int, threads: int = 1, n: int = 16, s: int = 4, k: int = 3,
                         c: Optional[float] = None) -> List[ExperimentRow]:
    """Paired-seed failure frequencies of the adaptive, fixed and one-shot processes"""
    c = config.c_const if c is None else c
    spec = InstanceSpec(family='planted-witness', n=n, s=s, k=k, seed=seed)
    graph = generate(spec)
    known_s = s_k_oracle(graph, k) if n <= config.enumeration_bound else s
    rows = []
    for tag in ('A-iterative-adaptive', 'B-iterative-fixed', 'C-one-shot'):
        variant = ProcessVariant(tag=tag, c_const=c)
        stats = estimate_sampler_failure(graph, k, lambda sub: iterative_process(graph, k, variant, sub, known_s),
                                         0.0, trials, seed, threads, family=spec.family, s=known_s)
        rows.append(stats_row('processes', tag, spec, stats))
    return rows


def run_experiment(tag: ExperimentTag, driver: Callable[..., List[ExperimentRow]],
                   **params: Any) -> Tuple[List[ExperimentRow], float]:
    """Run one driver, log it and return its rows with the elapsed wall time"""
    start = time.perf_counter()
    rows = driver(**params)
    elapsed = time.perf_counter() - start
    logger.info('Experiment', f' {tag} ', {'rows': len(rows), 'wall_time': f'{elapsed:.2f}s'})
    return rows, elapsed


def metadata_path(out: str) -> Path:
    path = Path(out)
    return path.with_name(f'{path.name}.meta.json')


def write_metadata(out: str, tag: ExperimentTag, params: Dict[str, Any], rows: List[ExperimentRow],
                   wall_time: float):
    """JSON sidecar next to the CSV, holding everything that is not reproducible byte for byte"""
    save_json({
        'experiment':        tag,
        'version':           __version__,
        'params':            {k: list(v) if isinstance(v, (tuple, set)) else v for k, v in params.items()},
        'rows':              len(rows),
        'wall_time_seconds': wall_time,
        'note':              ARTIFACT_NOTE,
        'config':            config.dict(),
    }, metadata_path(out))
