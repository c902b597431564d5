from typing import Dict, Optional, Sequence, Tuple

from StochasticTester.utils.rng import uniform53

EdgeKey = Tuple[float, int, int]
"""(weight, smaller NodeId, larger NodeId), a strict total order on edges"""


class EdgeWeighting:
    """
    Shared random edge costs derived from (master seed, repetition, NodeId pair).

    Both endpoints of an edge compute the identical cost without communicating.
    Ties between equal costs are broken by the canonical NodeId pair, so keys are
    pairwise distinct.
    """

    def __init__(self, master_seed: int, repetition: int = 0, node_ids: Optional[Sequence[int]] = None):
        """
        :param master_seed: master seed of the test
        :param repetition: repetition index
        :param node_ids: vertex -> NodeId, identity when omitted
        """
        self.master_seed = master_seed
        self.repetition = repetition
        self.node_ids = list(node_ids) if node_ids is not None else None
        self._cache: Dict[Tuple[int, int], EdgeKey] = {}

    def key_ids(self, a: int, b: int) -> EdgeKey:
        lo, hi = (a, b) if a < b else (b, a)
        if (key := self._cache.get((lo, hi))) is None:
            key = self._cache[(lo, hi)] = (uniform53(self.master_seed, self.repetition, lo, hi), lo, hi)
        return key

    def node_id(self, v: int) -> int:
        return self.node_ids[v] if self.node_ids is not None else v

    def key(self, u: int, v: int) -> EdgeKey:
        """Key of the edge between vertices u and v"""
        return self.key_ids(self.node_id(u), self.node_id(v))

    def weight(self, u: int, v: int) -> float:
        return self.key(u, v)[0]
