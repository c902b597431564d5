from StochasticTester.congest import TesterVerdict
from StochasticTester.graph import Graph, component_sizes


def conn_semantic_oracle(graph: Graph, s: int) -> TesterVerdict:
    """SomeReject iff G has a component C with |C| <= s and |C| < n"""
    smallest = component_sizes(graph)[0]
    if smallest <= s and smallest < graph.n:
        return TesterVerdict.SOME_REJECT
    return TesterVerdict.ALL_ACCEPT
