import math
from typing import List, Optional

from pydantic import BaseModel, root_validator, validator

from StochasticTester.graph import Graph
from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.stats import binomial_sigma, wilson_upper
from StochasticTester.utils.typing import ProcessTag


class AugmentParams(BaseModel):
    t: float
    """expected number of added edges"""
    non_edge_count: int
    """|Ē| of the graph the parameters were made for"""
    seed: int

    @validator('non_edge_count')
    def non_negative(cls, v):
        if v < 0:
            raise ValueError('|Ē| cannot be negative')
        return v

    @root_validator(skip_on_failure=True)
    def t_in_range(cls, values):
        if not 0 <= values['t'] <= values['non_edge_count']:
            raise ValueError('t must lie in [0, |Ē|]')
        return values

    @classmethod
    def for_graph(cls, graph: Graph, t: float, seed: int) -> 'AugmentParams':
        """
        Parameters of Add(G, t)
            :raise DomainError: t outside [0, |Ē|]
        """
        if math.isnan(t) or t < 0 or t > graph.non_edge_count:
            raise DomainError(f't={t} is outside [0, |Ē|={graph.non_edge_count}]', '0 <= t <= |Ē|')
        return cls(t=t, non_edge_count=graph.non_edge_count, seed=seed)

    @classmethod
    def from_probability(cls, graph: Graph, p: float, seed: int) -> 'AugmentParams':
        p = min(max(p, 0.0), 1.0)
        t = graph.non_edge_count if p >= 1 else p * graph.non_edge_count
        return cls.for_graph(graph, t, seed)

    @property
    def per_edge_prob(self) -> float:
        if self.non_edge_count == 0:
            return 0.0
        return min(1.0, self.t / self.non_edge_count)


CSV_HEADER = ('family', 'n', 'k', 's', 't', 'trials', 'failures', 'failure_rate', 'wilson_upper95', 'seed')


class TrialStats(BaseModel):
    family: str = 'custom'
    n: int
    k: int
    s: Optional[int] = None
    t: float
    trials: int
    failures: int
    seed: int
    failure_rate: float
    wilson_upper95: float

    @root_validator(skip_on_failure=True)
    def consistent(cls, values):
        if not 0 <= values['failures'] <= values['trials']:
            raise ValueError('failures must lie in [0, trials]')
        if not 0 <= values['failure_rate'] <= 1:
            raise ValueError('failure rate must lie in [0, 1]')
        if values['wilson_upper95'] < values['failure_rate']:
            raise ValueError('the Wilson upper bound cannot be below the failure rate')
        return values

    @classmethod
    def from_counts(cls, *, n: int, k: int, t: float, trials: int, failures: int, seed: int,
                    family: str = 'custom', s: Optional[int] = None) -> 'TrialStats':
        if trials < 1:
            raise DomainError('at least one trial is needed', 'trials >= 1')
        return cls(family=family, n=n, k=k, s=s, t=t, trials=trials, failures=failures, seed=seed,
                   failure_rate=failures / trials, wilson_upper95=wilson_upper(failures, trials))

    @property
    def sigma(self) -> float:
        return binomial_sigma(self.failure_rate, self.trials)

    def to_csv_row(self) -> List:
        return [self.family, self.n, self.k, '' if self.s is None else self.s, repr(float(self.t)), self.trials,
                self.failures, repr(self.failure_rate), repr(self.wilson_upper95), self.seed]


class ProcessVariant(BaseModel):
    tag: ProcessTag
    c_const: float = 2.0

    @validator('c_const')
    def c_above_one(cls, v):
        if v <= 1:
            raise ValueError('the constant c must exceed 1')
        return v
