import networkx as nx
import numpy as np
import pytest

from nodalpert.graph import Graph


def nx_components(g, keep):
    """Independent component oracle built on networkx."""
    h = nx.Graph()
    h.add_nodes_from(keep)
    h.add_edges_from((u, v) for u, v in g.edges if u in keep and v in keep)
    return sorted((sorted(c) for c in nx.connected_components(h)), key=lambda c: c[0])


def nx_snd(g, p):
    total = 0
    for s in (1, -1):
        total += len(nx_components(g, {v for v in range(g.n) if p[v] == s}))
    return total


def random_graph(rng, n, p=0.4, connected=True):
    while True:
        iu = np.triu_indices(n, 1)
        mask = rng.random(len(iu[0])) < p
        g = Graph(n, tuple(zip(iu[0][mask].tolist(), iu[1][mask].tolist())))
        if not connected or g.is_connected():
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
