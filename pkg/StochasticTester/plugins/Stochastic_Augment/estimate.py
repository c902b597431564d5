"""
Monte-Carlo estimation of Pr[Add(G, t) is not k-connected].

Trial i always runs on the sub-seed derive_seed(master, 'trial', i), so counts do not
depend on the number of worker threads and the same seed gives common random numbers
across different t.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components
from tqdm import tqdm

from StochasticTester.config import config
from StochasticTester.graph import Graph, is_k_connected
from StochasticTester.utils import logger
from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.rng import derive_seed
from .models import AugmentParams, TrialStats
from .process import sample_additions

TrialFn = Callable[[int], bool]
"""trial seed -> True when the trial fails"""


def trial_seed(master_seed: int, index: int) -> int:
    return derive_seed(master_seed, 'trial', index)


def _chunks(trials: int, threads: int) -> List[range]:
    size = max(1, math.ceil(trials / max(threads, 1)))
    return [range(start, min(start + size, trials)) for start in range(0, trials, size)]


def count_events(trials: int,
                 seed: int,
                 trial_fn: TrialFn,
                 threads: int = 1,
                 progress: bool = False,
                 desc: str = 'trials') -> int:
    """
    Run trial_fn on every derived trial seed and count the trials where it holds
        :param trials: number of trials
        :param seed: master seed
        :param trial_fn: pure predicate of the trial seed, a failure or a hit depending on the caller
        :param threads: worker threads, the count is identical for any value
        :param progress: show a tqdm bar
    """
    if trials < 1:
        raise DomainError(f'trials={trials}', 'trials >= 1')
    bar = tqdm(total=trials, desc=desc, disable=not progress, leave=False)

    def run_chunk(indices: range) -> int:
        failed = 0
        for i in indices:
            failed += bool(trial_fn(trial_seed(seed, i)))
        bar.update(len(indices))
        return failed

    try:
        chunks = _chunks(trials, threads)
        if threads <= 1 or len(chunks) == 1:
            return sum(run_chunk(c) for c in chunks)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(run_chunk, chunks))
    finally:
        bar.close()


def _fails_connectivity(graph: Graph, added: np.ndarray) -> bool:
    edges = np.concatenate([graph.edge_array, added]) if len(added) else graph.edge_array
    rows = np.concatenate([edges[:, 0], edges[:, 1]])
    cols = np.concatenate([edges[:, 1], edges[:, 0]])
    adj = sparse.csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(graph.n, graph.n))
    return connected_components(adj, directed=False, return_labels=False) != 1


def addition_fails(graph: Graph, k: int, params: AugmentParams) -> bool:
    """True when one draw of Add(G, t) with params.seed is not k-connected"""
    added = sample_additions(graph, params)
    if k == 1 and graph.n > 1:
        return _fails_connectivity(graph, added)
    return not is_k_connected(graph.with_edges(added), k)


def estimate_failure(graph: Graph,
                     k: int,
                     t: float,
                     trials: int,
                     seed: int,
                     threads: int = 1,
                     family: str = 'custom',
                     s: Optional[int] = None,
                     progress: bool = False) -> TrialStats:
    """
    Empirical probability that Add(G, t) is not k-connected
        :param graph: base graph
        :param k: connectivity target
        :param t: expected number of added edges
        :param trials: number of independent draws
        :param seed: master seed
        :param threads: worker threads
        :param family: instance family recorded in the row
        :param s: size parameter recorded in the row
    """
    AugmentParams.for_graph(graph, t, seed)
    if is_k_connected(graph, k):
        failures = 0
    else:
        failures = count_events(
            trials, seed,
            lambda sub: addition_fails(graph, k, AugmentParams.for_graph(graph, t, sub)),
            threads, progress, desc=f't={t:.4g}')
    return TrialStats.from_counts(n=graph.n, k=k, t=t, trials=trials, failures=failures, seed=seed,
                                  family=family, s=s)


def estimate_sampler_failure(graph: Graph,
                             k: int,
                             sampler: Callable[[int], Graph],
                             t: float,
                             trials: int,
                             seed: int,
                             threads: int = 1,
                             family: str = 'custom',
                             s: Optional[int] = None) -> TrialStats:
    """
    Same as estimate_failure for any randomized augmentation
        :param sampler: trial seed -> augmented graph
        :param t: the t recorded in the row
    """
    failures = count_events(trials, seed, lambda sub: not is_k_connected(sampler(sub), k), threads)
    return TrialStats.from_counts(n=graph.n, k=k, t=t, trials=trials, failures=failures, seed=seed,
                                  family=family, s=s)


def geometric_grid(non_edge_count: int, ratio: float) -> List[float]:
    """t0 = min(1, |Ē|), t_{j+1} = ratio·t_j, capped by a final point at |Ē|"""
    if non_edge_count <= 0:
        return [0.0]
    grid = []
    t = min(1.0, float(non_edge_count))
    while t < non_edge_count:
        grid.append(t)
        t *= ratio
    grid.append(float(non_edge_count))
    return grid


def threshold_search(graph: Graph,
                     k: int,
                     target_failure: float,
                     trials: int,
                     seed: int,
                     threads: int = 1,
                     ratio: Optional[float] = None,
                     progress: bool = False) -> float:
    """
    Smallest grid t whose estimated failure is at most the target
        :param graph: a graph that is not k-connected
        :param k: connectivity target
        :param target_failure: target in (0, 1)
        :param trials: trials per grid point
        :param seed: master seed, shared by all grid points
        :param ratio: grid ratio, the configured one by default
        :return: the threshold, |Ē| when even t = |Ē| misses the target
        :raise DomainError: G is k-connected or the target is outside (0, 1)
    """
    if not 0 < target_failure < 1:
        raise DomainError(f'target failure {target_failure}', '0 < target < 1')
    if is_k_connected(graph, k):
        raise DomainError(f'the graph is already {k}-connected', 'G not k-connected')
    ratio = config.grid_ratio if ratio is None else ratio
    grid = geometric_grid(graph.non_edge_count, ratio)
    rates: Dict[int, float] = {}

    def rate(index: int) -> float:
        if index not in rates:
            stats = estimate_failure(graph, k, grid[index], trials, seed, threads, progress=progress)
            rates[index] = stats.failure_rate
            logger.debug('Threshold search', f't=<m>{grid[index]:.6g}</m> failure=<m>{stats.failure_rate:.6g}</m>')
        return rates[index]

    # common random numbers make the estimate non-increasing along the grid
    last = len(grid) - 1
    if rate(last) > target_failure:
        return grid[last]
    lo, hi = -1, last
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if rate(mid) <= target_failure:
            hi = mid
        else:
            lo = mid
    logger.info('Threshold search', '', {'n': graph.n, 'k': k, 'target': target_failure, 't': grid[hi],
                                         'evaluated': len(rates)})
    return grid[hi]
