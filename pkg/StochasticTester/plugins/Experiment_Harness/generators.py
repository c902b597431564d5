"""
Instance families. Every generator re-checks the structural guarantee of its family with
the graph oracles before handing the graph out.
"""
import itertools
from typing import Callable, Dict, List, Tuple

import networkx as nx
from networkx.generators.harary_graph import hkn_harary_graph

from StochasticTester.config import config
from StochasticTester.graph import Graph, component_sizes, cut_size, edge_connectivity, is_k_connected, s_k_oracle
from StochasticTester.utils import logger
from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.rng import derive_seed
from StochasticTester.utils.typing import BulkShape, ComponentShape
from .models import InstanceSpec

Edge = Tuple[int, int]


def component_edges(offset: int, size: int, shape: ComponentShape) -> List[Edge]:
    """
    Edges of one component on the vertices offset..offset+size-1
        :param shape: clique, or cycle (a single edge for size 2, nothing for size 1)
    """
    if shape == 'clique':
        return list(itertools.combinations(range(offset, offset + size), 2))
    if size == 2:
        return [(offset, offset + 1)]
    if size < 2:
        return []
    return [(offset + i, offset + (i + 1) % size) for i in range(size)]


def bulk_edges(offset: int, size: int, k: int, bulk: BulkShape) -> List[Edge]:
    if bulk == 'clique':
        return component_edges(offset, size, 'clique')
    harary = hkn_harary_graph(k, size)
    return [(offset + u, offset + v) for u, v in harary.edges()]


def _resolve_sizes(spec: InstanceSpec) -> List[int]:
    if spec.sizes is not None:
        sizes = list(spec.sizes)
    elif spec.family == 'two-cliques':
        sizes = [spec.n // 2, spec.n - spec.n // 2]
    elif spec.parts:
        base, extra = divmod(spec.n, spec.parts)
        sizes = [base + (1 if i < extra else 0) for i in range(spec.parts)]
    else:
        raise DomainError('many-cliques needs sizes or parts', 'sizes or parts given')
    if spec.family == 'two-cliques' and len(sizes) != 2:
        raise DomainError(f'two-cliques with {len(sizes)} sizes', 'exactly two component sizes')
    if any(size < 1 for size in sizes):
        raise DomainError(f'component sizes {sizes}', 'every size >= 1')
    if sum(sizes) != spec.n:
        raise DomainError(f'component sizes {sizes} with n={spec.n}', 'sizes add up to n')
    return sizes


def _components(spec: InstanceSpec) -> Graph:
    sizes = _resolve_sizes(spec)
    edges: List[Edge] = []
    offset = 0
    for size in sizes:
        edges.extend(component_edges(offset, size, spec.shape))
        offset += size
    graph = Graph(spec.n, edges)
    if component_sizes(graph) != sorted(sizes):
        raise DomainError(f'components {component_sizes(graph)} instead of {sorted(sizes)}', 'family guarantee')
    return graph


def _require_k(spec: InstanceSpec) -> int:
    if spec.k is None or spec.k < 1:
        raise DomainError(f'{spec.family} with k={spec.k}', 'k >= 1')
    return spec.k


def _planted_witness(spec: InstanceSpec) -> Graph:
    k = _require_k(spec)
    s = spec.s
    if s is None or not 1 <= s < spec.n:
        raise DomainError(f'planted-witness with s={s}, n={spec.n}', '1 <= s < n')
    bulk = spec.n - s
    # n - s >= k + 1 also leaves room for k - 1 < s(n - s) bridges
    if bulk < k + 1:
        raise DomainError(f'bulk of {bulk} vertices for k={k}', 'bulk k-connected needs n - s >= k + 1')
    edges = component_edges(0, s, 'clique') + bulk_edges(s, bulk, k, spec.bulk)
    # k - 1 bridges, distinct bulk endpoints
    edges += [(i % s, s + i) for i in range(k - 1)]
    graph = Graph(spec.n, edges)

    witness = range(s)
    if cut_size(graph, witness) != k - 1:
        raise DomainError(f'planted cut {cut_size(graph, witness)}', 'c(W) = k - 1')
    bulk_graph = Graph(bulk, [(u - s, v - s) for u, v in edges if u >= s and v >= s])
    if not is_k_connected(bulk_graph, k):
        raise DomainError(f'bulk is not {k}-connected', 'family guarantee')
    if spec.n <= config.enumeration_bound and s_k_oracle(graph, k) > s:
        raise DomainError(f's_k(G) exceeds s={s}', 'family guarantee')
    return graph


def _circulant(spec: InstanceSpec) -> Graph:
    k = _require_k(spec)
    if spec.n < k + 1:
        raise DomainError(f'circulant-kconn with n={spec.n}, k={k}', 'n >= k + 1')
    graph = Graph.from_networkx(hkn_harary_graph(k, spec.n))
    if (connectivity := edge_connectivity(graph)) != k:
        raise DomainError(f'edge connectivity {connectivity}', f'edge connectivity = {k}')
    return graph


def _erdos_renyi(spec: InstanceSpec) -> Graph:
    if spec.p is None or not 0 <= spec.p <= 1:
        raise DomainError(f'erdos-renyi with p={spec.p}', '0 <= p <= 1')
    sampled = nx.gnp_random_graph(spec.n, spec.p, seed=derive_seed(spec.seed, 'erdos-renyi'))
    return Graph.from_networkx(sampled)


def _edgeless(spec: InstanceSpec) -> Graph:
    return Graph.edgeless(spec.n)


GENERATORS: Dict[str, Callable[[InstanceSpec], Graph]] = {
    'two-cliques':     _components,
    'many-cliques':    _components,
    'planted-witness': _planted_witness,
    'circulant-kconn': _circulant,
    'erdos-renyi':     _erdos_renyi,
    'edgeless':        _edgeless,
}


def generate(spec: InstanceSpec) -> Graph:
    """
    Build and self-check one instance
        :param spec: family and its parameters
        :raise DomainError: invalid parameters, with the violated constraint
    """
    graph = GENERATORS[spec.family](spec)
    logger.debug('Generator', f'{spec.family} n=<m>{graph.n}</m> m=<m>{graph.m}</m> digest=<m>{spec.digest()}</m>')
    return graph

