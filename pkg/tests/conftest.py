from typing import List

import networkx as nx
import pytest

from StochasticTester.config import ConfigManager, config
from StochasticTester.graph import Graph
from StochasticTester.utils import setup_logging


@pytest.fixture(autouse=True)
def fresh_config():
    """Every test starts from the default configuration and a stderr-only logger"""
    ConfigManager.reset()
    yield
    ConfigManager.reset()
    setup_logging(config.log_level)


@pytest.fixture(scope='session')
def atlas_graphs() -> List[Graph]:
    """Every graph with 1 to 7 vertices, up to isomorphism"""
    return [Graph.from_networkx(g) for g in nx.graph_atlas_g() if g.number_of_nodes() >= 1]


def cycle_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.cycle_graph(n))


def path_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def disjoint_cycles(*sizes: int) -> Graph:
    """Disjoint cycles (an edge for size 2, a vertex for size 1) on consecutive vertex ranges"""
    edges, offset = [], 0
    for size in sizes:
        if size == 2:
            edges.append((offset, offset + 1))
        elif size > 2:
            edges.extend((offset + i, offset + (i + 1) % size) for i in range(size))
        offset += size
    return Graph(offset, edges)
