from typing import Optional

import numpy as np

from StochasticTester.graph import Graph, edge_connectivity, s_k_oracle
from StochasticTester.utils import logger
from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.rng import derive_seed, make_rng
from .bounds import theorem41_probability
from .models import AugmentParams, ProcessVariant


def sample_additions(graph: Graph, params: AugmentParams, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """
    Non-edges picked by one draw of Add(G, t), one uniform per non-edge in canonical order
        :param graph: base graph
        :param params: AugmentParams made for this graph
        :param rng: generator, derived from params.seed when omitted
        :return: (a, 2) array of added pairs
    """
    if params.non_edge_count != graph.non_edge_count:
        raise DomainError('augment parameters were made for another graph', 'params.|Ē| = G.|Ē|')
    p = params.per_edge_prob
    non_edges = graph.non_edge_array
    if p <= 0 or not len(non_edges):
        return non_edges[:0]
    if p >= 1:
        return non_edges
    if rng is None:
        rng = make_rng(params.seed, 'add')
    return non_edges[rng.random(len(non_edges)) < p]


def random_addition(graph: Graph, params: AugmentParams, rng: Optional[np.random.Generator] = None) -> Graph:
    """
    Add(G, t): every non-edge joins independently with probability t/|Ē|
        :param graph: base graph
        :param params: t and seed
        :param rng: generator, derived from params.seed when omitted
    """
    return graph.with_edges(sample_additions(graph, params, rng))


def augment(graph: Graph, t: float, seed: int) -> Graph:
    return random_addition(graph, AugmentParams.for_graph(graph, t, seed))


def repeated_union(graph: Graph, t: float, m: int, seed: int) -> Graph:
    """
    Union of m independent Add(G, t) draws; with m = 1 it is exactly augment(G, t, seed)
        :raise DomainError: m < 1 or m·t > |Ē|
    """
    if m < 1:
        raise DomainError(f'm={m} copies requested', 'm >= 1')
    if m * t > graph.non_edge_count:
        raise DomainError(f'm·t={m * t} exceeds |Ē|={graph.non_edge_count}', 'm·t <= |Ē|')
    draws = []
    for copy in range(m):
        copy_seed = seed if copy == 0 else derive_seed(seed, 'copy', copy)
        draws.append(sample_additions(graph, AugmentParams.for_graph(graph, t, copy_seed)))
    added = np.concatenate(draws)
    if not len(added):
        return graph
    return graph.with_edges(np.unique(added, axis=0))


def _iteration(current: Graph, p: float, seed: int, step: int) -> Graph:
    return random_addition(current, AugmentParams.from_probability(current, p, derive_seed(seed, 'iteration', step)))


def iterative_process(graph: Graph, k: int, variant: ProcessVariant, seed: int, known_s: Optional[int] = None) -> Graph:
    """
    The three ways of lifting G from connectivity r to k; iteration i of every variant draws from
    the same sub-seed, C counting as iteration 1
        A-iterative-adaptive: one draw per level i = r+1..k with p_i from s_i of the current graph
        B-iterative-fixed: k - r draws with the fixed p' from s_k(G)
        C-one-shot: a single draw with p = p'·k
        :param known_s: s_k(G) of a planted instance, skips the oracle for B and C
        :raise DomainError: n < 4k
        :raise CapacityError: the s_k enumeration is needed above its bound
    """
    n = graph.n
    if k < 1:
        raise DomainError(f'k={k}', 'k >= 1')
    if n < 4 * k:
        raise DomainError(f'n={n} is below 4k={4 * k}', 'n >= 4k')
    r = min(k, edge_connectivity(graph))
    if r >= k:
        return graph
    c = variant.c_const
    if variant.tag == 'A-iterative-adaptive':
        current = graph
        for step, level in enumerate(range(r + 1, k + 1), start=1):
            p = min(1.0, theorem41_probability(n, s_k_oracle(current, level), c))
            current = _iteration(current, p, seed, step)
        return current
    s = known_s if known_s is not None else s_k_oracle(graph, k)
    p_fixed = min(1.0, theorem41_probability(n, s, c))
    if variant.tag == 'B-iterative-fixed':
        current = graph
        for step in range(1, k - r + 1):
            current = _iteration(current, p_fixed, seed, step)
        return current
    p = min(1.0, p_fixed * k)
    logger.debug('Augment', f'one-shot process p=<m>{p:.6g}</m> from s=<m>{s}</m>')
    return _iteration(graph, p, seed, 1)
