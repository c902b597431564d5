from typing import Dict, List, Optional, Tuple

from StochasticTester.config import config
from StochasticTester.congest import RoundEngine, RunReport, TesterVerdict, tester_verdict
from StochasticTester.graph import Graph, WitnessReport, WitnessSource, cut_size
from StochasticTester.utils import logger
from StochasticTester.utils.exc import DomainError, SoundnessError
from .models import KConnReport, RepetitionOutcome
from .program import KConnProgram, kconn_program, witness_candidates
from .schedule import RepetitionSchedule, WindowSchedule, kconn_max_rounds, rep_seed


def verify_witnesses(graph: Graph, engine: RoundEngine, s: int, k: int, repetition: int) -> List[WitnessReport]:
    """
    Rebuild and re-check every local detection of a finished repetition
        :raise SoundnessError: a rebuilt set is not an (s, k)-witness
    """
    programs: Dict[int, KConnProgram] = engine.programs
    reports = []
    for round, root, _, member_ids in witness_candidates(programs):
        members = sorted(engine.vertex_of[nid] for nid in member_ids)
        root_vertex = engine.vertex_of[root]
        if len(members) > s or len(members) >= graph.n:
            raise SoundnessError(root_vertex, repetition, f'{len(members)} members detected at round {round}')
        cut = cut_size(graph, members)
        if cut >= k:
            raise SoundnessError(root_vertex, repetition, f'c(W)={cut} is not below k={k}')
        reports.append(WitnessReport(members=members, cut_size=cut, k=k, s_bound=s, n=graph.n,
                                     source=WitnessSource(kind='distributed-run', root=root_vertex, root_id=root,
                                                          repetition=repetition)))
    return reports


def run_repetition(graph: Graph,
                   s: int,
                   k: int,
                   master_seed: int,
                   repetition: int,
                   budget_bits: Optional[int] = None) -> Tuple[RunReport, List[WitnessReport], RoundEngine]:
    """
    One repetition of the k-connectivity tester
        :return: the run report, every verified witness in detection order and the finished engine
    """
    if not 1 <= s < graph.n:
        raise DomainError(f's={s} with n={graph.n}', '1 <= s < n')
    slack = config.kconn_window_slack
    engine = RoundEngine(graph,
                         kconn_program(s, k, repetition, master_seed, slack),
                         kconn_max_rounds(s, slack),
                         budget_bits,
                         rep_seed(master_seed, repetition))
    report = engine.run()
    witnesses = verify_witnesses(graph, engine, s, k, repetition)
    report.extras.update({'repetition': repetition, 'detections': len(witnesses)})
    return report, witnesses, engine


def run_kconn_test(graph: Graph,
                   s: int,
                   k: int,
                   master_seed: int,
                   reps: Optional[int] = None,
                   stop_on_reject: bool = True,
                   budget_bits: Optional[int] = None) -> KConnReport:
    """
    The full k-connectivity tester: the repetition schedule, SomeReject when any repetition rejects
        :param graph: graph
        :param s: size bound, 1 <= s < n
        :param k: connectivity parameter
        :param master_seed: master seed
        :param reps: repetition count, ⌈γ·s^(2(1-1/k))·ln n⌉ by default
        :param stop_on_reject: stop at the first rejecting repetition
    """
    if k < 1:
        raise DomainError(f'k={k}', 'k >= 1')
    if not 1 <= s < graph.n:
        raise DomainError(f's={s} with n={graph.n}', '1 <= s < n')
    schedule = RepetitionSchedule(s=s, k=k, n=graph.n, gamma=config.kconn_gamma, master_seed=master_seed)
    reps = schedule.reps if reps is None else reps
    if reps < 1:
        raise DomainError(f'reps={reps}', 'reps >= 1')
    outcomes: List[RepetitionOutcome] = []
    budget = 0
    for repetition in range(reps):
        report, witnesses, _ = run_repetition(graph, s, k, master_seed, repetition, budget_bits)
        budget = report.budget_bits
        verdict = tester_verdict(report)
        outcomes.append(RepetitionOutcome(repetition=repetition,
                                          verdict=verdict,
                                          rounds_used=report.rounds_used,
                                          max_message_bits=report.max_message_bits,
                                          transcript_hash=report.transcript_hash,
                                          witness=witnesses[0] if witnesses else None))
        if verdict == TesterVerdict.SOME_REJECT and stop_on_reject:
            break
    rejecting = [o for o in outcomes if o.verdict == TesterVerdict.SOME_REJECT]
    result = KConnReport(verdict=TesterVerdict.SOME_REJECT if rejecting else TesterVerdict.ALL_ACCEPT,
                         s=s,
                         k=k,
                         n=graph.n,
                         reps_scheduled=reps,
                         reps_run=len(outcomes),
                         rounds_total=sum(o.rounds_used for o in outcomes),
                         rounds_per_rep=[o.rounds_used for o in outcomes],
                         round_bound_per_rep=WindowSchedule(s, config.kconn_window_slack).end,
                         max_message_bits=max(o.max_message_bits for o in outcomes),
                         budget_bits=budget,
                         master_seed=master_seed,
                         witness=rejecting[0].witness if rejecting else None)
    logger.debug('KConn tester', f'n=<m>{graph.n}</m> s=<m>{s}</m> k=<m>{k}</m> '
                                 f'verdict=<m>{result.verdict.value}</m> after <m>{result.reps_run}</m> repetitions')
    return result
