import os

import networkx as nx
import pytest

from sombor.graph import build_graph
from sombor.graph import family

# Set DEBUG=1 globally for all tests to avoid file logging permission issues
os.environ["DEBUG"] = "1"


def from_networkx(graph):
    return build_graph(graph.number_of_nodes(), list(graph.edges()))


@pytest.fixture(scope="session")
def atlas():
    """Every graph on 1..7 vertices, one per isomorphism class, keyed by order"""
    by_order = {}
    for graph in nx.graph_atlas_g():
        if graph.number_of_nodes():
            by_order.setdefault(graph.number_of_nodes(), []).append(graph)
    return by_order


@pytest.fixture(scope="session")
def connected_atlas(atlas):
    return {
        n: [from_networkx(g) for g in graphs if nx.is_connected(g)]
        for n, graphs in atlas.items()
    }


@pytest.fixture
def star4():
    return family("star", 4)


@pytest.fixture
def two_k2():
    return build_graph(4, [(0, 1), (2, 3)])


@pytest.fixture
def k13_k4():
    big = [(u, v) for v in range(13) for u in range(v)]
    small = [(13 + u, 13 + v) for v in range(4) for u in range(v)]
    return build_graph(17, big + small)


@pytest.fixture
def to_graph():
    return from_networkx
