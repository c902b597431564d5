import hashlib
from typing import Callable, Dict, List, Optional, Sequence

from StochasticTester.config import config
from StochasticTester.graph import Graph
from StochasticTester.utils import logger
from StochasticTester.utils.exc import DomainError, IncompleteRunError, ProtocolViolation
from StochasticTester.utils.rng import make_rng
from .models import (
    Envelope,
    NodeProgram,
    RunReport,
    SharedConfig,
    TesterVerdict,
    Verdict,
    default_budget,
    id_bits,
)

ProgramFactory = Callable[[], NodeProgram]


def assign_node_ids(n: int, seed: int) -> List[int]:
    """Seed-derived permutation of 0..n-1, entry v is the NodeId of vertex v"""
    return [int(i) for i in make_rng(seed, 'node-ids').permutation(n)]


class RoundEngine:
    """
    Deterministic synchronous round loop.

    Rounds are numbered from 1 and the inbox of round 1 is empty. The run halts when
    every verdict is decided, after a silent round in which every program is
    quiescent, or at ``max_rounds``; ``finalize()`` is then called on every program.
    """

    def __init__(self,
                 graph: Graph,
                 program_factory: ProgramFactory,
                 max_rounds: int,
                 budget_bits: Optional[int] = None,
                 seed: int = 0,
                 *,
                 activation_seed: Optional[int] = None,
                 halt_on_quiescence: bool = True):
        if max_rounds < 1:
            raise DomainError('max_rounds must be at least 1', 'max_rounds >= 1')
        if budget_bits is None:
            budget_bits = default_budget(graph.n, config.budget_factor)
        if budget_bits < id_bits(graph.n):
            raise DomainError(f'budget of {budget_bits} bits cannot carry a NodeId', 'budget_bits >= ⌈log2 n⌉')
        self.graph = graph
        self.max_rounds = max_rounds
        self.budget_bits = budget_bits
        self.seed = seed
        self.halt_on_quiescence = halt_on_quiescence
        self.node_ids = assign_node_ids(graph.n, seed)
        self.vertex_of = {nid: v for v, nid in enumerate(self.node_ids)}
        self.shared = SharedConfig(n=graph.n, budget_bits=budget_bits, id_bits=id_bits(graph.n), max_rounds=max_rounds)
        self._activation_rng = make_rng(activation_seed, 'activation') if activation_seed is not None else None
        self.neighbor_ids: Dict[int, frozenset] = {}
        self.programs: Dict[int, NodeProgram] = {}
        for v in range(graph.n):
            nid = self.node_ids[v]
            nbrs = [self.node_ids[w] for w in graph.neighbors(v)]
            self.neighbor_ids[nid] = frozenset(nbrs)
            program = program_factory()
            program.init(nid, nbrs, self.shared, make_rng(seed, 'node', nid))
            self.programs[nid] = program

    def _validate(self, nid: int, round: int, outbox: Sequence[Envelope]):
        seen = set()
        for env in outbox:
            if env.src != nid:
                raise ProtocolViolation(nid, round, f'envelope claims source {env.src}')
            if env.dst not in self.neighbor_ids[nid]:
                raise ProtocolViolation(nid, round, f'envelope addressed to non-neighbor {env.dst}')
            if env.dst in seen:
                raise ProtocolViolation(nid, round, f'second envelope to {env.dst} in the same round')
            if env.bit_len > self.budget_bits:
                raise ProtocolViolation(nid, round, f'{env.bit_len} bits exceed the budget of {self.budget_bits}')
            if env.bit_len < 0 or env.payload < 0 or env.payload >> env.bit_len:
                raise ProtocolViolation(nid, round, f'payload does not fit in {env.bit_len} bits')
            seen.add(env.dst)

    def run(self) -> RunReport:
        order = sorted(self.programs)
        inbox: Dict[int, List[Envelope]] = {nid: [] for nid in order}
        digest = hashlib.blake2b(digest_size=8)
        max_bits = 0
        message_count = 0
        rounds_used = 0
        halted = 'max-rounds'
        for round in range(1, self.max_rounds + 1):
            if self._activation_rng is not None:
                order = [order[i] for i in self._activation_rng.permutation(len(order))]
            outgoing: List[Envelope] = []
            for nid in order:
                delivered = sorted(inbox[nid])
                outbox = list(self.programs[nid].on_round(round, delivered) or ())
                self._validate(nid, round, outbox)
                outgoing.extend(outbox)
            rounds_used = round
            outgoing.sort()
            inbox = {nid: [] for nid in self.programs}
            for env in outgoing:
                digest.update(f'{round}:{env.src}:{env.dst}:{env.bit_len}:{env.payload};'.encode('ascii'))
                inbox[env.dst].append(env)
                max_bits = max(max_bits, env.bit_len)
            message_count += len(outgoing)
            if all(p.verdict() != Verdict.UNDECIDED for p in self.programs.values()):
                halted = 'decided'
                break
            if self.halt_on_quiescence and not outgoing and all(p.quiescent() for p in self.programs.values()):
                halted = 'quiescent'
                break
        for program in self.programs.values():
            program.finalize()
        logger.debug('CONGEST', f'n=<m>{self.graph.n}</m> halted <m>{halted}</m> after <m>{rounds_used}</m> rounds, '
                                f'<m>{message_count}</m> envelopes')
        return RunReport(verdicts={nid: p.verdict() for nid, p in self.programs.items()},
                         rounds_used=rounds_used,
                         max_message_bits=max_bits,
                         transcript_hash=digest.hexdigest(),
                         budget_bits=self.budget_bits,
                         max_rounds=self.max_rounds,
                         message_count=message_count,
                         halted=halted,
                         node_ids=self.node_ids)


def run(graph: Graph,
        program_factory: ProgramFactory,
        max_rounds: int,
        budget_bits: Optional[int] = None,
        seed: int = 0,
        **kwargs) -> RunReport:
    """
    Simulate one synchronous CONGEST execution
        :param graph: communication graph
        :param program_factory: returns a fresh NodeProgram per call
        :param max_rounds: hard round limit
        :param budget_bits: per-message bit budget, factor·⌈log2 n⌉ by default
        :param seed: drives the NodeId permutation and private randomness
    """
    return RoundEngine(graph, program_factory, max_rounds, budget_bits, seed, **kwargs).run()


def tester_verdict(report: RunReport) -> TesterVerdict:
    """
    SomeReject iff at least one node rejects
        :raise IncompleteRunError: some verdict is still undecided
    """
    undecided = sum(1 for v in report.verdicts.values() if v == Verdict.UNDECIDED)
    if undecided:
        raise IncompleteRunError(undecided)
    if any(v == Verdict.REJECT for v in report.verdicts.values()):
        return TesterVerdict.SOME_REJECT
    return TesterVerdict.ALL_ACCEPT
