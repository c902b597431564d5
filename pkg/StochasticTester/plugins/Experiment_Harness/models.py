import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, validator

from StochasticTester.utils.files import dump_json
from StochasticTester.utils.rng import digest64
from StochasticTester.utils.typing import BulkShape, ComponentShape, FamilyName


class InstanceSpec(BaseModel):
    family: FamilyName
    n: int
    sizes: Optional[List[int]] = None
    """component sizes of two-cliques / many-cliques"""
    parts: Optional[int] = None
    """number of equal components of many-cliques when sizes is omitted"""
    s: Optional[int] = None
    """planted witness size"""
    k: Optional[int] = None
    """connectivity parameter of planted-witness and circulant-kconn"""
    p: Optional[float] = None
    """edge probability of erdos-renyi"""
    shape: ComponentShape = 'clique'
    bulk: BulkShape = 'clique'
    seed: int = 0

    @validator('n')
    def n_positive(cls, v):
        if v < 1:
            raise ValueError('n must be at least 1')
        return v

    def canonical(self) -> Dict[str, Any]:
        return {k: v for k, v in sorted(self.dict().items()) if v is not None}

    def digest(self) -> str:
        """16 hex digits identifying the spec"""
        return f'{digest64(dump_json(self.canonical())):016x}'


ROW_HEADER = ('experiment', 'label', 'spec_digest', 'family', 'n', 's', 'k', 't', 'trials', 'failures',
              'failure_rate', 'wilson_upper95', 'bound', 'threshold', 'normalized', 'rounds', 'frequency',
              'exponent', 'hamming', 'seed')


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else str(value)
    return str(value)


class ExperimentRow(BaseModel):
    experiment: str
    label: str = ''
    spec_digest: str = ''
    family: str = ''
    n: Optional[int] = None
    s: Optional[int] = None
    k: Optional[int] = None
    t: Optional[float] = None
    trials: Optional[int] = None
    failures: Optional[int] = None
    failure_rate: Optional[float] = None
    wilson_upper95: Optional[float] = None
    bound: Optional[float] = None
    """the theoretical value the measurement is compared with"""
    threshold: Optional[float] = None
    normalized: Optional[float] = None
    rounds: Optional[int] = None
    frequency: Optional[float] = None
    exponent: Optional[float] = None
    hamming: Optional[int] = None
    seed: int

    def to_csv_row(self) -> List[str]:
        return [_cell(getattr(self, name)) for name in ROW_HEADER]

    @property
    def sigma(self) -> float:
        if self.failure_rate is None or not self.trials:
            return 0.0
        return math.sqrt(self.failure_rate * (1 - self.failure_rate) / self.trials)
