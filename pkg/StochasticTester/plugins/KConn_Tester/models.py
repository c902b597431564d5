from typing import List, Optional

from pydantic import BaseModel, root_validator

from StochasticTester.congest import TesterVerdict
from StochasticTester.graph import WitnessReport


class RepetitionOutcome(BaseModel):
    repetition: int
    verdict: TesterVerdict
    rounds_used: int
    max_message_bits: int
    transcript_hash: str
    witness: Optional[WitnessReport] = None


class KConnReport(BaseModel):
    verdict: TesterVerdict
    s: int
    k: int
    n: int
    reps_scheduled: int
    reps_run: int
    rounds_total: int
    rounds_per_rep: List[int]
    round_bound_per_rep: int
    """scheduled rounds of one repetition, Σ (2i + slack)"""
    max_message_bits: int
    budget_bits: int
    master_seed: int
    witness: Optional[WitnessReport] = None

    @root_validator(skip_on_failure=True)
    def consistent(cls, values):
        if values['reps_run'] != len(values['rounds_per_rep']):
            raise ValueError('one round count per repetition run')
        if values['rounds_total'] != sum(values['rounds_per_rep']):
            raise ValueError('rounds_total must add up the repetitions')
        if values['max_message_bits'] > values['budget_bits']:
            raise ValueError('max_message_bits exceeds the budget')
        if (values['witness'] is not None) != (values['verdict'] == TesterVerdict.SOME_REJECT):
            raise ValueError('a witness accompanies exactly the rejecting runs')
        return values

    def to_json(self) -> dict:
        data = {
            'verdict': self.verdict.value,
            's': self.s,
            'k': self.k,
            'n': self.n,
            'reps_scheduled': self.reps_scheduled,
            'reps_run': self.reps_run,
            'rounds_total': self.rounds_total,
            'rounds_per_rep': list(self.rounds_per_rep),
            'round_bound_per_rep': self.round_bound_per_rep,
            'max_message_bits': self.max_message_bits,
            'budget_bits': self.budget_bits,
            'master_seed': self.master_seed,
        }
        if self.witness is not None:
            data['witness'] = self.witness.dict()
        return data
