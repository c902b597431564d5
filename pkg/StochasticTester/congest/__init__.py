from .codec import MessageCodec
from .engine import RoundEngine, assign_node_ids, run, tester_verdict
from .models import (
    DecodedMessage,
    Envelope,
    NodeProgram,
    RunReport,
    SharedConfig,
    TesterVerdict,
    Verdict,
    default_budget,
    id_bits,
)
