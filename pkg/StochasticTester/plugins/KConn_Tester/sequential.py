import heapq
from typing import Iterable, List, Optional, Tuple

from networkx.utils import UnionFind

from StochasticTester.graph import Graph, WitnessReport, WitnessSource, cut_size
from StochasticTester.graph.models import normalize_vertex_set
from StochasticTester.plugins.Stochastic_Augment import count_events
from StochasticTester.utils.exc import DomainError
from .schedule import weighting_for_rep
from .weights import EdgeKey, EdgeWeighting


def sequential_witness_search(graph: Graph,
                              u: int,
                              s: int,
                              k: int,
                              weights: EdgeWeighting) -> Optional[WitnessReport]:
    """
    Grow W from {u} along the cheapest cut edge and stop at the first small cut
        :param graph: graph
        :param u: start vertex
        :param s: size bound, 1 <= s < n
        :param k: connectivity parameter
        :param weights: shared edge costs
        :return: the witness, or None when |W| reaches s or the cut runs out first
    """
    if not 1 <= s < graph.n:
        raise DomainError(f's={s} with n={graph.n}', '1 <= s < n')
    members = {u}
    cut = graph.degree(u)

    def report() -> WitnessReport:
        return WitnessReport(members=sorted(members), cut_size=cut, k=k, s_bound=s, n=graph.n,
                             source=WitnessSource(kind='sequential-process', root=u))

    if cut < k:
        return report()
    frontier: List[Tuple[EdgeKey, int]] = [(weights.key(u, v), v) for v in graph.neighbors(u)]
    heapq.heapify(frontier)
    while len(members) < s:
        while frontier and frontier[0][1] in members:
            heapq.heappop(frontier)
        if not frontier:
            return None
        _, x = heapq.heappop(frontier)
        inside = sum(1 for v in graph.neighbors(x) if v in members)
        cut += graph.degree(x) - 2 * inside
        members.add(x)
        if cut < k:
            return report()
        for v in graph.neighbors(x):
            if v not in members:
                heapq.heappush(frontier, (weights.key(x, v), v))
    return None


def tree_event_holds(graph: Graph, members: Iterable[int], weights: EdgeWeighting) -> bool:
    """
    True when the minimum spanning tree of G[W] is lighter than every cut edge of W;
    a disconnected G[W] never qualifies
    """
    members = set(normalize_vertex_set(graph, members))
    if len(members) <= 1:
        return True
    inner, cut_keys = [], []
    for u, v in graph.edges:
        if u in members and v in members:
            inner.append((weights.key(u, v), u, v))
        elif u in members or v in members:
            cut_keys.append(weights.key(u, v))
    forest = UnionFind(members)
    heaviest, joined = None, 0
    for key, u, v in sorted(inner):
        if forest[u] != forest[v]:
            forest.union(u, v)
            heaviest = key
            joined += 1
    if joined != len(members) - 1:
        return False
    return not cut_keys or heaviest < min(cut_keys)


def lemma51_frequency(graph: Graph, members: Iterable[int], k: int, trials: int, seed: int, threads: int = 1) -> float:
    """
    Fraction of independent weightings under which G[W] has a spanning tree lighter than the cut
        :param members: W with c(W) < k
        :raise DomainError: W is not a proper subset with cut below k
    """
    members = normalize_vertex_set(graph, members)
    cut = cut_size(graph, members)
    if cut >= k:
        raise DomainError(f'c(W)={cut} is not below k={k}', 'c(W) < k')
    if len(members) == 1:
        return 1.0
    hits = count_events(trials, seed, lambda sub: tree_event_holds(graph, members, EdgeWeighting(sub)), threads)
    return hits / trials


def find_tree_event_seed(graph: Graph, members: Iterable[int], master_seed: int, max_reps: int = 10000) -> int:
    """
    First repetition index whose derived weighting satisfies the tree event for W
        :raise DomainError: none of the first max_reps repetitions qualifies
    """
    members = normalize_vertex_set(graph, members)
    for repetition in range(max_reps):
        if tree_event_holds(graph, members, weighting_for_rep(graph.n, master_seed, repetition)):
            return repetition
    raise DomainError(f'no repetition below {max_reps} satisfies the tree event')
