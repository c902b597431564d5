from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, List, Literal, NamedTuple, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, root_validator


class Verdict(str, Enum):
    ACCEPT = 'accept'
    """the node accepts"""
    REJECT = 'reject'
    """the node rejects"""
    UNDECIDED = 'undecided'
    """no output yet"""


class TesterVerdict(str, Enum):
    ALL_ACCEPT = 'AllAccept'
    """every node accepts"""
    SOME_REJECT = 'SomeReject'
    """at least one node rejects"""


class Envelope(NamedTuple):
    src: int
    """NodeId of the sender"""
    dst: int
    """NodeId of the receiver, must be a neighbor"""
    payload: int
    """bit string as an unsigned integer"""
    bit_len: int
    """declared length of the bit string"""


def id_bits(n: int) -> int:
    """Bits needed for NodeIds 0..n-1, at least one"""
    return max(1, (n - 1).bit_length())


def default_budget(n: int, factor: int = 8) -> int:
    """factor·⌈log2 n⌉ bits, at least factor bits"""
    return factor * id_bits(n)


class SharedConfig(BaseModel):
    n: int
    budget_bits: int
    id_bits: int
    max_rounds: int

    class Config:
        allow_mutation = False


class NodeProgram(ABC):
    """
    Synchronous CONGEST node behavior.

    ``on_round(r, inbox)`` receives every envelope sent to the node in round r-1 and
    returns the envelopes to deliver at round r+1, at most one per neighbor.
    """

    node_id: int
    neighbor_ids: Tuple[int, ...]
    config: SharedConfig
    rng: np.random.Generator

    def __init__(self):
        self._verdict = Verdict.UNDECIDED

    def init(self, node_id: int, neighbor_ids: Sequence[int], config: SharedConfig, rng: np.random.Generator):
        self.node_id = node_id
        self.neighbor_ids = tuple(sorted(neighbor_ids))
        self.config = config
        self.rng = rng

    @abstractmethod
    def on_round(self, round: int, inbox: Sequence[Envelope]) -> List[Envelope]:
        raise NotImplementedError

    def verdict(self) -> Verdict:
        return self._verdict

    def decide(self, verdict: Verdict):
        self._verdict = verdict

    def finalize(self):
        """Called once when the run halts"""

    def quiescent(self) -> bool:
        """True when the node has no scheduled work without new messages"""
        return True

    def send(self, dst: int, payload: int, bit_len: int) -> Envelope:
        return Envelope(self.node_id, dst, payload, bit_len)


class RunReport(BaseModel):
    verdicts: Dict[int, Verdict]
    """NodeId -> verdict"""
    rounds_used: int
    max_message_bits: int
    transcript_hash: str
    """64-bit BLAKE2b digest of all envelopes in canonical order, hex"""
    budget_bits: int
    max_rounds: int
    message_count: int = 0
    halted: Literal['decided', 'quiescent', 'max-rounds'] = 'max-rounds'
    node_ids: List[int] = []
    """vertex -> NodeId"""
    extras: Dict[str, Any] = {}

    @root_validator(skip_on_failure=True)
    def within_limits(cls, values):
        if values['rounds_used'] > values['max_rounds']:
            raise ValueError('rounds_used exceeds max_rounds')
        if values['max_message_bits'] > values['budget_bits']:
            raise ValueError('max_message_bits exceeds the budget')
        return values

    def vertex_verdicts(self) -> List[Verdict]:
        return [self.verdicts[i] for i in self.node_ids]

    def to_json(self) -> dict:
        return {
            'verdicts': {str(k): v.value for k, v in sorted(self.verdicts.items())},
            'rounds_used': self.rounds_used,
            'max_message_bits': self.max_message_bits,
            'transcript_hash': self.transcript_hash,
            'budget_bits': self.budget_bits,
            'max_rounds': self.max_rounds,
            'message_count': self.message_count,
            'halted': self.halted,
            'node_ids': list(self.node_ids),
            'extras': self.extras,
        }


class DecodedMessage(NamedTuple):
    kind: str
    fields: Dict[str, int]
