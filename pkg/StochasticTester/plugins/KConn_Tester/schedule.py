import math
from bisect import bisect_right
from typing import List, Optional, Tuple

from pydantic import BaseModel, validator

from StochasticTester.congest import assign_node_ids
from StochasticTester.utils.rng import derive_seed
from .weights import EdgeWeighting


class WindowSchedule:
    """
    Lock-step iteration windows of one repetition. Iteration i in 1..s-1 owns
    2i + slack consecutive rounds, the first window starts at round 1.
    """

    def __init__(self, s: int, slack: int = 6):
        if s < 1:
            raise ValueError('s must be at least 1')
        self.s = s
        self.slack = slack
        self.starts: List[int] = []
        start = 1
        for i in range(1, s):
            self.starts.append(start)
            start += self.length(i)
        self.total = start - 1

    def length(self, i: int) -> int:
        return 2 * i + self.slack

    def start(self, i: int) -> int:
        return self.starts[i - 1]

    @property
    def end(self) -> int:
        """Last scheduled round, at least round 1 for the singleton check"""
        return max(1, self.total)

    def locate(self, round: int) -> Optional[Tuple[int, int]]:
        """(iteration, offset) of a round, None outside every window"""
        if not self.starts or round < 1 or round > self.total:
            return None
        i = bisect_right(self.starts, round)
        return i, round - self.starts[i - 1]


def kconn_max_rounds(s: int, slack: int = 6) -> int:
    """Schedule plus a drain for the reject flood"""
    return WindowSchedule(s, slack).end + 2 * s + slack


def rep_seed(master_seed: int, repetition: int) -> int:
    """Engine seed of one repetition, drives the NodeId permutation"""
    return derive_seed(master_seed, 'rep', repetition)


def weighting_for_rep(n: int, master_seed: int, repetition: int) -> EdgeWeighting:
    """The weighting a repetition's nodes derive, expressed on vertices"""
    return EdgeWeighting(master_seed, repetition, assign_node_ids(n, rep_seed(master_seed, repetition)))


class RepetitionSchedule(BaseModel):
    s: int
    k: int
    n: int
    gamma: float = 8.0
    master_seed: int

    @validator('gamma')
    def gamma_positive(cls, v):
        if v <= 0:
            raise ValueError('gamma must be positive')
        return v

    @property
    def reps(self) -> int:
        """⌈γ·s^(2(1-1/k))·ln n⌉, at least 1"""
        exponent = 2 * (1 - 1 / self.k)
        return max(1, math.ceil(self.gamma * self.s ** exponent * math.log(max(self.n, 2))))

    def seed(self, repetition: int) -> int:
        return rep_seed(self.master_seed, repetition)
