"""Synthetic bounded-degeneracy host generation for benchmarks and tests."""

from __future__ import annotations

import random

from .graph import Graph


def bounded_degeneracy_host(
    edge_count: int, *, attach: int = 3, seed: int = 0
) -> Graph:
    """Random host with exactly ``edge_count`` edges and degeneracy <= ``attach``.

    Incremental construction: each new vertex picks min(attach, current
    size) distinct random earlier neighbors, so every subgraph's newest
    vertex has degree at most ``attach``. Deterministic for a given seed.
    """
    if edge_count < 0:
        raise ValueError("edge_count must be nonnegative")
    rng = random.Random(seed)
    nbrs: list[list[int]] = [[]]
    built = 0
    while built < edge_count:
        v = len(nbrs)
        take = min(attach, v, edge_count - built)
        chosen = rng.sample(range(v), take)
        nbrs.append(sorted(chosen))
        for u in chosen:
            nbrs[u].append(v)
        built += take
    return Graph(tuple(tuple(sorted(a)) for a in nbrs))
