from typing import Literal

FamilyName = Literal['two-cliques', 'many-cliques', 'planted-witness', 'circulant-kconn', 'erdos-renyi', 'edgeless']
ComponentShape = Literal['clique', 'cycle']
BulkShape = Literal['clique', 'circulant']
ProcessTag = Literal['A-iterative-adaptive', 'B-iterative-fixed', 'C-one-shot']
WitnessKind = Literal['oracle', 'sequential-process', 'distributed-run']
ExperimentTag = Literal['g1g2', 'lemma31', 'lemma31-tightness', 'rounds', 'rounds-conn', 'rounds-kconn',
                        'appendix', 'lemma51', 'processes']
