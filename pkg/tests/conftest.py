import random

import pytest

from homcount import Graph, Pattern


def cycle_graph(r: int) -> Graph:
    return Graph.from_edges(r, [(i, (i + 1) % r) for i in range(r)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def gnp_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def pendant_hexagon() -> Graph:
    """A 6-cycle on vertices 2..7 with pendants 0-2 and 1-3.

    The standing k=8 hard example: longest induced cycle 6, two vertices
    outside it, one wired to a cycle anchor and one to its neighbor.
    """
    return Graph.from_edges(
        8, [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 7)]
    )


BULL_EDGES = ((0, 1), (0, 2), (1, 2), (1, 3), (2, 4))


@pytest.fixture
def c5_pattern() -> Pattern:
    return Pattern(cycle_graph(5))


@pytest.fixture
def c6_pattern() -> Pattern:
    return Pattern(cycle_graph(6))


@pytest.fixture
def c7_pattern() -> Pattern:
    return Pattern(cycle_graph(7))


@pytest.fixture
def pendant_pattern() -> Pattern:
    return Pattern(pendant_hexagon())
