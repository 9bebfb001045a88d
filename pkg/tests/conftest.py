from fractions import Fraction

import pytest

from unicover.graph import Edge, Multigraph


def make_graph(n, pairs, weight=1):
    return Multigraph(n, tuple(
        Edge(u, v, Fraction(weight), i) for i, (u, v) in enumerate(pairs)))


@pytest.fixture
def c4():
    return make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def two_triangles():
    """Two triangles joined by a pair of bridges: has a genuine 2-edge cut."""
    return make_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                          (2, 3), (5, 0)])
