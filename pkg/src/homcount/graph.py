"""Immutable graph core.

Simple undirected graphs in compressed adjacency form, edge-list parsing
and canonical writing, degeneracy ordering (repeated minimum-degree
removal), acyclic orientation by a vertex order, induced-subgraph
deletion, and direct triangle counting via out-neighbor intersection.

All structures are immutable after construction and safe to share across
concurrent tasks; every operation here is pure.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable


class EdgeListError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message: str, line_no: int | None = None):
        super().__init__(f"line {line_no}: {message}" if line_no is not None else message)
        self.line_no = line_no


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph over dense 0-based vertex ids.

    ``adjacency[v]`` is a strictly increasing tuple of v's neighbors, so the
    graph has no self-loops and no duplicate edges, and symmetry holds by
    construction (use :meth:`from_edges` or :func:`parse_edge_list`).
    ``labels`` optionally maps internal ids back to external tokens; it is
    carried for reporting only and ignored by every algorithm.
    """

    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        labels: tuple[str, ...] | None = None,
    ) -> "Graph":
        """Build a graph from (u, v) pairs; duplicates collapse, loops are rejected."""
        nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {vertex_count} vertices")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(tuple(tuple(sorted(s)) for s in nbrs), labels)

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def is_connected(self) -> bool:
        n = self.vertex_count
        if n <= 1:
            return True
        seen = bytearray(n)
        seen[0] = 1
        stack = [0]
        reached = 1
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if not seen[w]:
                    seen[w] = 1
                    reached += 1
                    stack.append(w)
        return reached == n


@dataclass(frozen=True)
class OrientedGraph:
    """An acyclic orientation of ``base``: every base edge in exactly one direction.

    ``order`` records the inducing vertex order when the orientation came
    from one; orientations built from an edge-direction bitmask leave it
    ``None``.
    """

    base: Graph
    out_neighbors: tuple[tuple[int, ...], ...]
    order: tuple[int, ...] | None = None

    @property
    def vertex_count(self) -> int:
        return len(self.out_neighbors)

    @cached_property
    def in_degrees(self) -> tuple[int, ...]:
        indeg = [0] * self.vertex_count
        for nbrs in self.out_neighbors:
            for w in nbrs:
                indeg[w] += 1
        return tuple(indeg)

    @property
    def max_out_degree(self) -> int:
        return max(map(len, self.out_neighbors), default=0)

    def topological_order(self) -> tuple[int, ...]:
        """A topological order, smallest id first among ready vertices.

        Raises ValueError if the digraph has a cycle.
        """
        indeg = list(self.in_degrees)
        heap = [v for v in range(self.vertex_count) if indeg[v] == 0]
        heapq.heapify(heap)
        out: list[int] = []
        while heap:
            v = heapq.heappop(heap)
            out.append(v)
            for w in self.out_neighbors[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(out) != self.vertex_count:
            raise ValueError("orientation contains a directed cycle")
        return tuple(out)


def parse_edge_list(source: str | bytes | IO) -> Graph:
    """Parse whitespace-separated "u v" lines into a Graph.

    Labels are arbitrary tokens, remapped to contiguous ids 0..n-1 in
    first-appearance order. Lines starting with '#' and blank lines are
    ignored. Duplicate edges collapse; self-loops and lines without exactly
    two tokens raise EdgeListError with the offending line number.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")

    ids: dict[str, int] = {}
    labels: list[str] = []
    edges: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListError(f"expected two tokens, got {len(tokens)}", line_no)
        a, b = tokens
        if a == b:
            raise EdgeListError(f"self-loop at vertex {a!r}", line_no)
        for tok in (a, b):
            if tok not in ids:
                ids[tok] = len(labels)
                labels.append(tok)
        u, v = ids[a], ids[b]
        edges.add((u, v) if u < v else (v, u))

    nbrs: list[list[int]] = [[] for _ in range(len(labels))]
    for u, v in sorted(edges):
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(tuple(tuple(sorted(s)) for s in nbrs), tuple(labels))


def write_edge_list(g: Graph) -> str:
    """Canonical edge-list text: sorted "u v" lines, u < v by internal id.

    Deterministic for a given graph; isolated vertices do not appear.
    """
    lines = [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + ("\n" if lines else "")


def degeneracy_order(g: Graph) -> tuple[tuple[int, ...], int]:
    """Order vertices by repeated minimum-degree removal; return (order, kappa).

    kappa is the maximum residual degree seen at removal time, i.e. the
    degeneracy. Ties among minimum-degree vertices break to the smallest id,
    so the output is deterministic.
    """
    n = g.vertex_count
    adj = g.adjacency
    deg = [len(nbrs) for nbrs in adj]
    heaps: dict[int, list[int]] = {}
    for v in range(n):
        heaps.setdefault(deg[v], []).append(v)
    for h in heaps.values():
        heapq.heapify(h)

    removed = bytearray(n)
    order: list[int] = []
    kappa = 0
    d = 0
    while len(order) < n:
        while True:
            h = heaps.get(d)
            while h and (removed[h[0]] or deg[h[0]] != d):
                heapq.heappop(h)
            if h:
                break
            d += 1
        v = heapq.heappop(heaps[d])
        removed[v] = 1
        order.append(v)
        if d > kappa:
            kappa = d
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heaps.setdefault(deg[w], []), w)
        d = max(d - 1, 0)
    return tuple(order), kappa


def orient(g: Graph, order: Iterable[int]) -> OrientedGraph:
    """Direct every edge from its earlier endpoint to its later one in ``order``."""
    order = tuple(order)
    n = g.vertex_count
    if len(order) != n or sorted(order) != list(range(n)):
        raise ValueError("order is not a permutation of the vertex ids")
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    out = tuple(
        tuple(w for w in g.adjacency[u] if pos[u] < pos[w]) for u in range(n)
    )
    return OrientedGraph(base=g, out_neighbors=out, order=order)


def delete_vertices(g: Graph, removed: Iterable[int]) -> Graph:
    """Induced subgraph on the complement of ``removed``.

    Survivors are remapped onto 0..n'-1 in ascending original id; the remap
    is retained on the result's labels (the original label, or the original
    id as a string when the parent was unlabeled).
    """
    removed = set(removed)
    n = g.vertex_count
    for v in removed:
        if not (0 <= v < n):
            raise ValueError(f"vertex id {v} out of range")
    kept = [v for v in range(n) if v not in removed]
    new_id = {v: i for i, v in enumerate(kept)}
    adjacency = tuple(
        tuple(new_id[w] for w in g.adjacency[v] if w not in removed) for v in kept
    )
    labels = tuple(g.label_of(v) for v in kept)
    return Graph(adjacency, labels)


def count_triangles_direct(g: Graph) -> int:
    """Exact triangle count via degeneracy orientation + out-neighbor intersection."""
    order, _ = degeneracy_order(g)
    h = orient(g, order)
    out = h.out_neighbors
    total = 0
    for u in range(g.vertex_count):
        ou = out[u]
        if len(ou) < 2:
            continue
        su = set(ou)
        for v in ou:
            for w in out[v]:
                if w in su:
                    total += 1
    return total
