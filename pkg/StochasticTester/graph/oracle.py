"""
Exact brute-force structural oracles. Every function is pure and safe to call from
concurrent trial workers.
"""
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import connected_components as cs_components

from StochasticTester.config import config
from StochasticTester.utils.exc import CapacityError, DomainError
from .models import CutReport, Graph, WitnessReport, WitnessSource, normalize_vertex_set


def potential(n: int, size: int) -> int:
    """d(t) = t(n - t)"""
    return size * (n - size)


def cut_size(graph: Graph, members: Iterable[int]) -> int:
    """
    c(U), the number of edges with exactly one endpoint in U
        :param graph: graph
        :param members: U, nonempty proper subset of V
        :raise DomainError: U empty or U = V
    """
    members = normalize_vertex_set(graph, members)
    if not members:
        raise DomainError('cut of the empty set is undefined', 'U ≠ ∅')
    if len(members) == graph.n:
        raise DomainError('cut of the whole vertex set is undefined', 'U ≠ V')
    inside = np.zeros(graph.n, dtype=bool)
    inside[list(members)] = True
    edges = graph.edge_array
    return int(np.count_nonzero(inside[edges[:, 0]] != inside[edges[:, 1]]))


def cut_report(graph: Graph, members: Iterable[int]) -> CutReport:
    members = normalize_vertex_set(graph, members)
    return CutReport(members=list(members),
                     cut_size=cut_size(graph, members),
                     potential=potential(graph.n, len(members)))


def connected_components(graph: Graph) -> List[FrozenSet[int]]:
    """Components ordered by their smallest vertex"""
    count, labels = cs_components(graph.csr, directed=False)
    parts: List[List[int]] = [[] for _ in range(count)]
    for v, label in enumerate(labels):
        parts[label].append(v)
    return sorted((frozenset(p) for p in parts), key=min)


def component_sizes(graph: Graph) -> List[int]:
    return sorted(len(c) for c in connected_components(graph))


def is_connected(graph: Graph) -> bool:
    return cs_components(graph.csr, directed=False, return_labels=False) == 1


def edge_connectivity(graph: Graph) -> int:
    """
    Global minimum edge cut via Stoer-Wagner
        :raise DomainError: n < 2
    """
    if graph.n < 2:
        raise DomainError('edge connectivity needs at least two vertices', 'n >= 2')
    if not is_connected(graph):
        return 0
    cut_value, _ = nx.stoer_wagner(graph.to_networkx())
    return int(cut_value)


def edge_connectivity_exhaustive(graph: Graph, bound: Optional[int] = None) -> int:
    """
    Minimum over all nonempty proper subsets, the cross-check for edge_connectivity
        :param bound: largest n accepted, the configured cross-check bound by default
        :raise CapacityError: n above the bound
    """
    bound = config.exhaustive_cut_bound if bound is None else bound
    if graph.n < 2:
        raise DomainError('edge connectivity needs at least two vertices', 'n >= 2')
    if graph.n > bound:
        raise CapacityError('edge_connectivity_exhaustive', graph.n, bound)
    # vertex n-1 stays outside U, complements give the same cut
    masks = np.arange(1, 1 << (graph.n - 1), dtype=np.int64)
    cuts = _cut_sizes(graph, masks)
    return int(cuts.min())


def is_k_connected(graph: Graph, k: int) -> bool:
    """True iff edge_connectivity(G) >= k; single vertices are k-connected for every k"""
    if k <= 0 or graph.n == 1:
        return True
    if int(graph.degrees.min()) < k:
        return False
    if k == 1:
        return is_connected(graph)
    return edge_connectivity(graph) >= k


def _cut_sizes(graph: Graph, masks: np.ndarray) -> np.ndarray:
    cuts = np.zeros(len(masks), dtype=np.int64)
    for u, v in graph.edges:
        cuts += ((masks >> u) ^ (masks >> v)) & 1
    return cuts


@lru_cache(maxsize=4)
def _masks_by_popcount(n: int) -> Tuple[np.ndarray, ...]:
    popcount = np.zeros(1 << n, dtype=np.int8)
    for b in range(n):
        popcount[1 << b:2 << b] = popcount[:1 << b] + 1
    masks = np.arange(1 << n, dtype=np.int64)
    return tuple(masks[popcount == t] for t in range(n + 1))


def _check_bound(graph: Graph, oracle: str, bound: Optional[int]) -> None:
    bound = config.enumeration_bound if bound is None else bound
    if graph.n > bound:
        raise CapacityError(oracle, graph.n, bound)


def _small_cut_masks(graph: Graph, k: int) -> Tuple[int, np.ndarray]:
    # c(U) = c(V \ U), so a smallest member of S_k has at most n/2 vertices
    levels = _masks_by_popcount(graph.n)
    for size in range(1, graph.n // 2 + 1):
        masks = levels[size]
        hits = masks[_cut_sizes(graph, masks) < k]
        if len(hits):
            return size, hits
    return graph.n, np.zeros(0, dtype=np.int64)


def s_k_oracle(graph: Graph, k: int, bound: Optional[int] = None) -> int:
    """
    s_k(G), the smallest |U| with c(U) < k, or n when no such U exists
        :param bound: enumeration bound, the configured one by default
        :raise CapacityError: n above the enumeration bound
    """
    _check_bound(graph, 's_k_oracle', bound)
    return _small_cut_masks(graph, k)[0]


def minimal_small_cut_sets(graph: Graph, k: int, bound: Optional[int] = None) -> List[CutReport]:
    """All U with c(U) < k and |U| = s_k(G), in mask order"""
    _check_bound(graph, 'minimal_small_cut_sets', bound)
    size, hits = _small_cut_masks(graph, k)
    if size == graph.n:
        return []
    reports = []
    for mask in hits.tolist():
        members = [v for v in range(graph.n) if mask >> v & 1]
        reports.append(cut_report(graph, members))
    return reports


def hamming_additions_to_connected(graph: Graph) -> int:
    """Edges needed to connect G, one per component merge"""
    return len(connected_components(graph)) - 1


def oracle_witness(graph: Graph, k: int, s: int, bound: Optional[int] = None) -> Optional[WitnessReport]:
    """A minimal (s,k)-witness found by enumeration, if s_k(G) <= s"""
    reports = minimal_small_cut_sets(graph, k, bound)
    if not reports or len(reports[0].members) > s:
        return None
    first = reports[0]
    return WitnessReport(members=first.members, cut_size=first.cut_size, k=k, s_bound=s, n=graph.n,
                         source=WitnessSource(kind='oracle'))
