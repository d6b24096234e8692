import pytest

from dynbiclique import Biclique, BipartiteGraph, EdgeBatch


def bc(left, right):
    return Biclique.make(left, right)


@pytest.fixture
def t0():
    """Two disjoint edges: left a=0, b=1; right x=0, y=1."""
    return BipartiteGraph.from_edges([(0, 0), (1, 1)])


@pytest.fixture
def t1(t0):
    """t0 plus the edge (a, y); bicliques ({a},{x,y}) and ({a,b},{y})."""
    return t0.add_edges(EdgeBatch.of([(0, 1)]))
