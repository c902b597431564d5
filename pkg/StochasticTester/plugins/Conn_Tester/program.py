"""
Competing token DFS executions, one rooted at every node.

A node belongs to the highest root id that has reached it. A token arriving at a node
owned by a higher root dies silently; a token arriving at a lower-owned node takes the
node over. An execution that has visited s nodes checks the visited set for an
outgoing edge while its CHECK message climbs back to the root; an execution that runs
out of nodes first has exhausted its component.
"""
from functools import partial
from typing import Dict, List, Optional, Sequence

from StochasticTester.congest import Envelope, MessageCodec, NodeProgram, SharedConfig, Verdict
from StochasticTester.utils.exc import DomainError

UNKNOWN = -1


def conn_codec(n: int, id_width: int) -> MessageCodec:
    count_width = max(1, n.bit_length())
    return MessageCodec({
        'JOIN':  [('root', id_width)],
        'TOKEN': [('root', id_width), ('count', count_width)],
        'BACK':  [('root', id_width), ('count', count_width)],
        'CHECK': [('root', id_width), ('found', 1)],
    })


class ConnTesterProgram(NodeProgram):

    def __init__(self, s: int):
        super().__init__()
        self.s = s
        self.owner = UNKNOWN
        self.parent: Optional[int] = None
        self.nbr_owner: Dict[int, int] = {}
        self.codec: Optional[MessageCodec] = None
        self.rejected_as_root = False
        """set when this node rejected on behalf of its own execution"""

    def init(self, node_id: int, neighbor_ids: Sequence[int], config: SharedConfig, rng):
        super().init(node_id, neighbor_ids, config, rng)
        if not 1 <= self.s <= config.n:
            raise DomainError(f's={self.s} with n={config.n}', '1 <= s <= n')
        self.codec = conn_codec(config.n, config.id_bits)
        self.nbr_owner = {nbr: UNKNOWN for nbr in self.neighbor_ids}

    @property
    def is_root(self) -> bool:
        return self.owner == self.node_id

    def _message(self, dst: int, kind: str, **fields) -> Envelope:
        payload, bit_len = self.codec.encode(kind, **fields)
        return self.send(dst, payload, bit_len)

    def _outside_neighbor(self) -> bool:
        return any(owner != self.owner for owner in self.nbr_owner.values())

    def _next_hop(self) -> Optional[int]:
        for nbr in self.neighbor_ids:
            if self.nbr_owner[nbr] != self.owner:
                return nbr
        return None

    def _reject(self):
        self.rejected_as_root = True
        self.decide(Verdict.REJECT)

    def _conclude_check(self, found: bool) -> List[Envelope]:
        """The visited set holds s nodes and this node's local check is folded into found"""
        found = found or self._outside_neighbor()
        if self.is_root:
            if not found and self.s < self.config.n:
                self._reject()
            return []
        return [self._message(self.parent, 'CHECK', root=self.owner, found=int(found))]

    def _advance(self, count: int) -> List[Envelope]:
        """Move the token on from this node, holding count visited nodes"""
        nxt = self._next_hop()
        if nxt is not None:
            return [self._message(nxt, 'TOKEN', root=self.owner, count=count)]
        if self.is_root:
            if count < self.config.n:
                self._reject()
            return []
        return [self._message(self.parent, 'BACK', root=self.owner, count=count)]

    def _adopt(self, root: int, parent: Optional[int], count: int) -> List[Envelope]:
        self.owner = root
        self.parent = parent
        # the s-th node still announces its owner, adjacent ancestors check against it
        outbox = self._conclude_check(False) if count == self.s else self._advance(count)
        busy = {env.dst for env in outbox}
        outbox.extend(self._message(nbr, 'JOIN', root=root) for nbr in self.neighbor_ids if nbr not in busy)
        return outbox

    def on_round(self, round: int, inbox: Sequence[Envelope]) -> List[Envelope]:
        if round == 1:
            return self._adopt(self.node_id, None, 1)
        messages = [(env.src, self.codec.decode(env.payload, env.bit_len)) for env in inbox]
        for src, msg in messages:
            self.nbr_owner[src] = msg.fields['root']
        tokens = [(msg.fields['root'], src, msg.fields['count']) for src, msg in messages if msg.kind == 'TOKEN']
        if tokens:
            root, src, count = max(tokens)
            if root > self.owner:
                return self._adopt(root, src, count + 1)
        for src, msg in messages:
            if msg.fields['root'] != self.owner:
                continue
            if msg.kind == 'BACK':
                return self._advance(msg.fields['count'])
            if msg.kind == 'CHECK':
                return self._conclude_check(bool(msg.fields['found']))
        return []

    def finalize(self):
        if self.verdict() == Verdict.UNDECIDED:
            self.decide(Verdict.ACCEPT)


def conn_program(s: int, n: int):
    """
    Program factory of the connectivity tester
        :param s: size parameter, 1 <= s <= n
        :param n: number of nodes
        :raise DomainError: s outside [1, n]
    """
    if not 1 <= s <= n:
        raise DomainError(f's={s} with n={n}', '1 <= s <= n')
    return partial(ConnTesterProgram, s)


def conn_max_rounds(s: int, alpha: int, beta: int) -> int:
    return alpha * s + beta
