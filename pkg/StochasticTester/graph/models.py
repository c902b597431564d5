from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from pydantic import BaseModel, root_validator, validator
from scipy import sparse

from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.typing import WitnessKind

Edge = Tuple[int, int]
EdgeLike = Union[Iterable[Sequence[int]], np.ndarray]


class Graph:
    """
    Immutable simple undirected graph over the vertices 0..n-1.

    Edges are kept canonically (u < v) in a lexicographically sorted ``(m, 2)`` array,
    so iteration order and serialization are deterministic.
    """

    def __init__(self, n: int, edges: EdgeLike = ()):
        if n < 1:
            raise DomainError('a graph needs at least one vertex', 'n >= 1')
        arr = np.array(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise DomainError('edges must be pairs of vertex ids')
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        if len(arr):
            if (lo == hi).any():
                u = int(lo[lo == hi][0])
                raise DomainError(f'self-loop at vertex {u}', 'no self-loops')
            if lo.min() < 0 or hi.max() >= n:
                raise DomainError(f'edge endpoint outside 0..{n - 1}', '0 <= u < v < n')
        keys = lo * n + hi
        order = np.argsort(keys, kind='stable')
        keys = keys[order]
        if len(keys) > 1 and (np.diff(keys) == 0).any():
            dup = int(keys[1:][np.diff(keys) == 0][0])
            raise DomainError(f'duplicate edge ({dup // n}, {dup % n})', 'no duplicate edges')
        self._n = int(n)
        self._edges = np.stack([lo[order], hi[order]], axis=1)
        self._edges.setflags(write=False)

    @classmethod
    def complete(cls, n: int) -> 'Graph':
        iu = np.triu_indices(n, 1)
        return cls(n, np.stack(iu, axis=1))

    @classmethod
    def edgeless(cls, n: int) -> 'Graph':
        return cls(n)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> 'Graph':
        """Relabel the nodes of a networkx graph to 0..n-1 in sorted order"""
        nodes = sorted(graph.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), [(index[u], index[v]) for u, v in graph.edges()])

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edge_array(self) -> np.ndarray:
        return self._edges

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple((int(u), int(v)) for u, v in self._edges)

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @property
    def max_edges(self) -> int:
        return self._n * (self._n - 1) // 2

    @property
    def non_edge_count(self) -> int:
        """|Ē|, the number of vertex pairs that are not edges"""
        return self.max_edges - self.m

    @cached_property
    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self._n, self._n), dtype=bool)
        adj[self._edges[:, 0], self._edges[:, 1]] = True
        adj[self._edges[:, 1], self._edges[:, 0]] = True
        adj.setflags(write=False)
        return adj

    @cached_property
    def non_edge_array(self) -> np.ndarray:
        iu, ju = np.triu_indices(self._n, 1)
        missing = ~self.adjacency[iu, ju]
        arr = np.stack([iu[missing], ju[missing]], axis=1).astype(np.int64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.bincount(self._edges.ravel(), minlength=self._n)
        deg.setflags(write=False)
        return deg

    @cached_property
    def adjacency_lists(self) -> Tuple[Tuple[int, ...], ...]:
        lists: List[List[int]] = [[] for _ in range(self._n)]
        for u, v in self.edges:
            lists[u].append(v)
            lists[v].append(u)
        return tuple(tuple(sorted(nbrs)) for nbrs in lists)

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        rows = np.concatenate([self._edges[:, 0], self._edges[:, 1]])
        cols = np.concatenate([self._edges[:, 1], self._edges[:, 0]])
        data = np.ones(len(rows), dtype=np.int8)
        return sparse.csr_matrix((data, (rows, cols)), shape=(self._n, self._n))

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency_lists[v]

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def with_edges(self, extra: EdgeLike) -> 'Graph':
        """Supergraph on the same vertices; extra edges must be non-edges of this graph"""
        extra = np.array(extra if isinstance(extra, np.ndarray) else list(extra), dtype=np.int64)
        if extra.size == 0:
            return self
        return Graph(self._n, np.concatenate([self._edges, extra.reshape(-1, 2)]))

    def is_subgraph_of(self, other: 'Graph') -> bool:
        return self._n == other.n and self.edge_set <= other.edge_set

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self.edges)
        return graph

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other.n and np.array_equal(self._edges, other.edge_array)

    def __hash__(self) -> int:
        return hash((self._n, self._edges.tobytes()))

    def __repr__(self) -> str:
        return f'<Graph n={self._n}, m={self.m}>'


def normalize_vertex_set(graph: Graph, members: Iterable[int]) -> Tuple[int, ...]:
    """
    Sorted, de-duplicated vertex set
        :raise DomainError: a member lies outside 0..n-1
    """
    result = tuple(sorted({int(v) for v in members}))
    if result and (result[0] < 0 or result[-1] >= graph.n):
        raise DomainError(f'vertex set {list(result)} is not a subset of 0..{graph.n - 1}', 'members ⊆ V')
    return result


class CutReport(BaseModel):
    members: List[int]
    """U, sorted"""
    cut_size: int
    """c(U)"""
    potential: int
    """d(|U|) = |U|(n - |U|)"""

    @validator('members')
    def members_sorted(cls, v):
        if not v:
            raise ValueError('a cut side must be nonempty')
        if list(v) != sorted(set(v)):
            raise ValueError('members must be sorted and distinct')
        return v

    @root_validator(skip_on_failure=True)
    def cut_below_potential(cls, values):
        if not 0 <= values['cut_size'] <= values['potential']:
            raise ValueError('cut size must lie in [0, d(|U|)]')
        return values


class WitnessSource(BaseModel):
    kind: WitnessKind
    root: Optional[int] = None
    """vertex the execution started from"""
    root_id: Optional[int] = None
    """NodeId of the root in a distributed run"""
    repetition: Optional[int] = None


class WitnessReport(BaseModel):
    members: List[int]
    cut_size: int
    k: int
    s_bound: int
    n: int
    source: WitnessSource

    @validator('members')
    def members_sorted(cls, v):
        if not v:
            raise ValueError('a witness must be nonempty')
        if list(v) != sorted(set(v)):
            raise ValueError('members must be sorted and distinct')
        return v

    @root_validator(skip_on_failure=True)
    def is_witness(cls, values):
        if values['cut_size'] >= values['k']:
            raise ValueError('a witness must have cut size below k')
        if len(values['members']) > values['s_bound']:
            raise ValueError('a witness must have at most s members')
        if len(values['members']) >= values['n']:
            raise ValueError('a witness must be a proper subset of V')
        return values

    @property
    def size(self) -> int:
        return len(self.members)
