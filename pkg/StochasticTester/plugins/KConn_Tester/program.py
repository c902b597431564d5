"""
Distributed cluster growth for k-edge-connectivity, one repetition.

Every node roots a cluster. Iteration i runs in a fixed window of 2i + slack rounds;
at window offset o:

    0 .. i-1   convergecast of the cheapest cut edge and the cut size up the tree
    i-1        the root broadcasts the winning edge e* and the cut size c_old
    2i-2       the member incident to e* sends ABSORB to the node x across it
    2i-1       x resolves every ABSORB against its own alive cluster, lowest
               (max-edge, root id) wins, and sends NOTIFY to all neighbors
    2i         NOTIFY arrivals grow trees, doom losers and broken clusters

A node joining cluster A checks c_new = c_old - 2|N(x) ∩ A| + deg(x) and rejects when
c_new < k. Doomed clusters set their members free with a DIE flood along the tree; a
cluster missing a member never completes another convergecast. REJECT and DIE floods
use free edge slots after the scheduled messages.
"""
from collections import deque
from functools import partial
from typing import Deque, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from StochasticTester.congest import DecodedMessage, Envelope, MessageCodec, NodeProgram, SharedConfig, Verdict
from StochasticTester.utils.exc import DomainError, ProtocolViolation
from .schedule import WindowSchedule
from .weights import EdgeKey, EdgeWeighting


def kconn_codec(id_width: int, count_width: int) -> MessageCodec:
    return MessageCodec({
        'REPORT': [('has', 1), ('lo', id_width), ('hi', id_width), ('count', count_width)],
        'BCAST':  [('lo', id_width), ('hi', id_width), ('count', count_width)],
        'ABSORB': [('root', id_width), ('lo', id_width), ('hi', id_width), ('count', count_width)],
        'NOTIFY': [('root', id_width), ('reject', 1)],
        'DIE':    [('root', id_width)],
        'REJECT': [('root', id_width)],
    })


def count_cap(n: int, s: int, k: int) -> int:
    """Saturation point of cut counts; a cut of at least this value cannot drop below k within s joins"""
    return min(k, n * n) + 2 * s


class KConnProgram(NodeProgram):

    def __init__(self, s: int, k: int, repetition: int, master_seed: int, slack: int = 6):
        super().__init__()
        self.s = s
        self.k = k
        self.repetition = repetition
        self.master_seed = master_seed
        self.schedule = WindowSchedule(s, slack)
        self.weights = EdgeWeighting(master_seed, repetition)
        self.round = 0

        self.root: Optional[int] = None
        self.parent: Optional[int] = None
        self.children: Set[int] = set()
        self.nbr_root: Dict[int, Optional[int]] = {}
        self.max_edge: Optional[EdgeKey] = None
        self.alive_window = 0
        """last window in which this node's cluster completed its broadcast"""

        self.reports: Dict[int, Tuple[Optional[EdgeKey], int]] = {}
        self.report_sent = False
        self.local: Tuple[Optional[EdgeKey], int] = (None, 0)
        self.c_old = 0
        self.pending_absorb: Optional[int] = None
        self.absorb_target: Optional[int] = None
        self.absorb_root: Optional[int] = None
        self.queues: Dict[int, Deque[Tuple[str, int]]] = {}

        self.history: List[Tuple[int, Optional[int]]] = []
        """(round, root) after every membership change, root None when free"""
        self.broadcast_windows: List[int] = []
        """windows in which this node broadcast as a cluster root"""
        self.doom_log: List[Tuple[int, int]] = []
        """(round, root) of every cluster this node left by termination"""
        self.reject_events: List[Tuple[int, int]] = []
        """(round, root) of every local detection c_new < k"""

    def init(self, node_id: int, neighbor_ids: Sequence[int], config: SharedConfig, rng):
        super().init(node_id, neighbor_ids, config, rng)
        if not 1 <= self.s < config.n:
            raise DomainError(f's={self.s} with n={config.n}', '1 <= s < n')
        if self.k < 1:
            raise DomainError(f'k={self.k}', 'k >= 1')
        self.cap = count_cap(config.n, self.s, self.k)
        self.codec = kconn_codec(config.id_bits, max(1, self.cap.bit_length()))
        self.root = node_id
        self.history.append((0, node_id))
        self.nbr_root = {nbr: nbr for nbr in self.neighbor_ids}
        self.queues = {nbr: deque() for nbr in self.neighbor_ids}

    def root_at(self, round: int) -> Optional[int]:
        """Cluster root of this node after the given round"""
        current = None
        for changed, root in self.history:
            if changed > round:
                break
            current = root
        return current

    # messages

    def _encode(self, dst: int, kind: str, **fields) -> Envelope:
        payload, bit_len = self.codec.encode(kind, **fields)
        return self.send(dst, payload, bit_len)

    def _put(self, out: Dict[int, Envelope], dst: int, kind: str, **fields):
        # scheduled steps never share a round on the same edge
        if dst in out:
            raise ProtocolViolation(self.node_id, self.round, f'{kind} collides with another message to {dst}')
        out[dst] = self._encode(dst, kind, **fields)

    def _flood(self, kind: str, root: int, targets: Iterable[int]):
        if kind == 'DIE' and self.round >= self.schedule.end:
            return
        for dst in targets:
            self.queues[dst].append((kind, root))

    def _tree(self) -> Set[int]:
        return self.children | ({self.parent} if self.parent is not None else set())

    # membership

    def _set_root(self, root: Optional[int]):
        self.root = root
        self.history.append((self.round, root))

    def _doom(self):
        if self.root is None:
            return
        old = self.root
        self._flood('DIE', old, sorted(self._tree()))
        self.doom_log.append((self.round, old))
        self.parent = None
        self.children = set()
        self.absorb_target = self.absorb_root = None
        self.pending_absorb = None
        self._set_root(None)

    def _reject(self, source: Optional[int] = None):
        if self.verdict() == Verdict.REJECT:
            return
        self.decide(Verdict.REJECT)
        self._flood('REJECT', self.root, sorted(self._tree() - {source}))

    # window steps

    def _local_report(self) -> Tuple[Optional[EdgeKey], int]:
        best, count = None, 0
        for nbr in self.neighbor_ids:
            if self.nbr_root[nbr] != self.root:
                count += 1
                key = self.weights.key_ids(self.node_id, nbr)
                if best is None or key < best:
                    best = key
        return best, min(count, self.cap)

    def _aggregate(self) -> Tuple[Optional[EdgeKey], int]:
        best, count = self.local
        for key, sub in self.reports.values():
            if key is not None and (best is None or key < best):
                best = key
            count = min(self.cap, count + sub)
        return best, count

    def _accept_edge(self, lo: int, hi: int, c_old: int, window: int, out: Dict[int, Envelope]):
        key = self.weights.key_ids(lo, hi)
        self.max_edge = key if self.max_edge is None or key > self.max_edge else self.max_edge
        self.c_old = c_old
        self.alive_window = window
        for child in sorted(self.children):
            self._put(out, child, 'BCAST', lo=lo, hi=hi, count=c_old)
        if self.node_id in (lo, hi):
            self.pending_absorb = hi if self.node_id == lo else lo

    def _window_step(self, i: int, offset: int, messages: List[Tuple[int, DecodedMessage]], out: Dict[int, Envelope]):
        if offset == 0:
            self.reports = {}
            self.report_sent = False
            self.pending_absorb = None
            if self.root is not None:
                self.local = self._local_report()
        if self.root is None:
            return
        for src, msg in messages:
            if msg.kind == 'REPORT' and src in self.children:
                f = msg.fields
                self.reports[src] = (self.weights.key_ids(f['lo'], f['hi']) if f['has'] else None, f['count'])
            elif msg.kind == 'BCAST' and src == self.parent:
                self._accept_edge(msg.fields['lo'], msg.fields['hi'], msg.fields['count'], i, out)
        complete = set(self.reports) >= self.children
        if self.parent is not None:
            if complete and not self.report_sent and offset < i:
                best, count = self._aggregate()
                has = best is not None
                self._put(out, self.parent, 'REPORT', has=int(has), lo=best[1] if has else 0, hi=best[2] if has else 0,
                          count=count)
                self.report_sent = True
        elif offset == i - 1 and complete:
            best, count = self._aggregate()
            if best is not None:
                self.broadcast_windows.append(i)
                self._accept_edge(best[1], best[2], count, i, out)
        if offset == 2 * i - 2 and self.pending_absorb is not None:
            target = self.pending_absorb
            self.pending_absorb = None
            self.absorb_target, self.absorb_root = target, self.root
            self._put(out, target, 'ABSORB', root=self.root, lo=self.max_edge[1], hi=self.max_edge[2], count=self.c_old)

    def _resolve(self, i: int, absorbs: List[Tuple[int, DecodedMessage]], out: Dict[int, Envelope]):
        candidates = []
        for src, msg in absorbs:
            f = msg.fields
            candidates.append((self.weights.key_ids(f['lo'], f['hi']), f['root'], src, f['count']))
        if self.root is not None and self.alive_window == i and self.max_edge is not None:
            candidates.append((self.max_edge, self.root, None, None))
        max_edge, root, via, c_old = min(candidates, key=lambda c: (c[0], c[1]))
        rejected = False
        if via is not None:
            inside = sum(1 for nbr in self.neighbor_ids if self.nbr_root[nbr] == root)
            c_new = c_old - 2 * inside + len(self.neighbor_ids)
            self.parent = via
            self.children = set()
            self.absorb_target = self.absorb_root = None
            self.pending_absorb = None
            self.max_edge = max_edge
            self._set_root(root)
            if c_new < self.k:
                self.reject_events.append((self.round, root))
                self.decide(Verdict.REJECT)
                rejected = True
        for nbr in self.neighbor_ids:
            self._put(out, nbr, 'NOTIFY', root=self.root, reject=int(rejected))

    def _on_notify(self, src: int, root: int, reject: bool):
        self.nbr_root[src] = root
        if self.root is None:
            return
        if src == self.absorb_target:
            joined = root == self.absorb_root == self.root
            self.absorb_target = self.absorb_root = None
            if not joined:
                self._doom()
                return
            self.children.add(src)
            if reject:
                self._reject(source=src)
        elif (src == self.parent or src in self.children) and root != self.root:
            self._doom()

    def _fill_slots(self, out: Dict[int, Envelope]):
        for nbr in self.neighbor_ids:
            queue = self.queues[nbr]
            if self.round >= self.schedule.end and any(kind == 'DIE' for kind, _ in queue):
                queue = self.queues[nbr] = deque(entry for entry in queue if entry[0] != 'DIE')
            if queue and nbr not in out:
                kind, root = queue.popleft()
                out[nbr] = self._encode(nbr, kind, root=root)

    def on_round(self, round: int, inbox: Sequence[Envelope]) -> List[Envelope]:
        self.round = round
        out: Dict[int, Envelope] = {}
        messages = [(env.src, self.codec.decode(env.payload, env.bit_len)) for env in inbox]
        if round == 1 and len(self.neighbor_ids) < self.k:
            self.reject_events.append((round, self.node_id))
            self.decide(Verdict.REJECT)
        for src, msg in messages:
            if msg.kind == 'NOTIFY':
                self._on_notify(src, msg.fields['root'], bool(msg.fields['reject']))
        for src, msg in messages:
            if msg.kind == 'DIE' and self.root == msg.fields['root'] and src in self._tree():
                self._doom()
        for src, msg in messages:
            if msg.kind == 'REJECT' and self.root == msg.fields['root']:
                self._reject(source=src)
        if (located := self.schedule.locate(round)) is not None:
            i, offset = located
            self._window_step(i, offset, messages, out)
            absorbs = [(src, msg) for src, msg in messages if msg.kind == 'ABSORB']
            if absorbs and offset == 2 * i - 1:
                self._resolve(i, absorbs, out)
        self._fill_slots(out)
        return [out[dst] for dst in sorted(out)]

    def quiescent(self) -> bool:
        return self.round >= self.schedule.end and not any(self.queues.values())

    def finalize(self):
        if self.verdict() == Verdict.UNDECIDED:
            self.decide(Verdict.ACCEPT)


def kconn_program(s: int, k: int, rep_index: int, master_seed: int, slack: int = 6):
    """
    Program factory of one repetition of the k-connectivity tester
        :param s: size bound, 1 <= s < n
        :param k: connectivity parameter
        :param rep_index: repetition index, selects the edge costs
        :param master_seed: master seed shared by all nodes
    """
    if s < 1 or k < 1:
        raise DomainError(f's={s}, k={k}', 's >= 1 and k >= 1')
    return partial(KConnProgram, s, k, rep_index, master_seed, slack)


def alive_roots(programs: Iterable[KConnProgram], window: int) -> Set[int]:
    """Roots whose cluster completed the broadcast of the given window"""
    return {p.node_id for p in programs if window in p.broadcast_windows}


def witness_candidates(programs: Dict[int, KConnProgram]) -> List[Tuple[int, int, int, Set[int]]]:
    """
    Every local detection with the member set it certifies
        :return: (round, root id, detecting node id, member ids) sorted by round then root
    """
    found = []
    for nid, program in programs.items():
        for round, root in program.reject_events:
            members = {pid for pid, p in programs.items() if p.root_at(round - 1) == root}
            members.add(nid)
            found.append((round, root, nid, members))
    return sorted(found, key=lambda e: (e[0], e[1], e[2]))
