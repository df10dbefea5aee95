"""Exact homomorphism counting.

Two engines: a backtracking brute-force counter, and the near-linear
decomposition engine that orients the host by a degeneracy order, sums
directed counts over every acyclic orientation of the pattern, and
evaluates each orientation by dynamic programming over its width-1 DAG
tree decomposition with separator-keyed tables. On top of both sits
inclusion-exclusion counting of homomorphisms that hit every part of a
k-part host partition.

Counts are plain Python ints, so arithmetic is exact at any magnitude.
"""

from __future__ import annotations

import concurrent.futures
import heapq
import multiprocessing
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal

from .graph import Graph, OrientedGraph, degeneracy_order, delete_vertices, orient
from .pattern import (
    DagTreeDecomposition,
    HardnessCertificate,
    Pattern,
    automorphism_count,
    hardness_certificate,
    reach_masks,
    validate_decomposition,
)

Engine = Literal["auto", "dtd", "brute"]


class HostSizeError(ValueError):
    """Host exceeds the configured limit for brute-force oracle mode."""


class HardPatternError(Exception):
    """The decomposition engine was requested for a pattern whose longest
    induced cycle has length >= 6; carries the hardness certificate."""

    def __init__(self, certificate: HardnessCertificate):
        super().__init__(
            "pattern has longest induced cycle >= 6; no width-1 decomposition "
            f"exists (unique-reachability triangle on sources {certificate.triangle})"
        )
        self.certificate = certificate


class CountConsistencyError(RuntimeError):
    """An exactness invariant failed (non-exact division); signals a counting bug."""


class InvalidDecompositionError(ValueError):
    """The supplied decomposition is not a valid width-1 tree."""


@dataclass(frozen=True)
class VertexPartition:
    """Disjoint host-vertex sets covering V(G).

    Parts may be empty (an empty part simply forces every partitioned count
    to zero), which lets degenerate reduction instances flow through
    unchanged.
    """

    vertex_count: int
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for part in self.parts:
            if part & seen:
                raise ValueError("partition parts are not disjoint")
            seen |= part
        if seen != set(range(self.vertex_count)):
            raise ValueError("partition does not cover the vertex set")

    @property
    def size(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class HomTable:
    """Partial-homomorphism counts keyed by images of a separator.

    Keys are packed base-``vertex_base`` ints internally; ``entries`` decodes
    to the tuple-keyed mapping (one host id per separator vertex, in
    separator order). Zero counts are never stored.
    """

    separator: tuple[int, ...]
    vertex_base: int
    packed: dict[int, int]

    @property
    def entries(self) -> dict[tuple[int, ...], int]:
        width = len(self.separator)
        out: dict[tuple[int, ...], int] = {}
        for key, count in self.packed.items():
            images = []
            for _ in range(width):
                images.append(key % self.vertex_base)
                key //= self.vertex_base
            out[tuple(images)] = count
        return out


# ---------------------------------------------------------------------------
# brute-force engine


def _brute_order(p: Pattern) -> list[int]:
    """Connectivity-respecting vertex order: highest degree first, then the
    vertex with the most already-ordered neighbors."""
    g = p.graph
    k = g.vertex_count
    order = [max(range(k), key=lambda v: (g.degree(v), -v))]
    placed = {order[0]}
    while len(order) < k:
        best = max(
            (v for v in range(k) if v not in placed),
            key=lambda v: (
                sum(1 for w in g.adjacency[v] if w in placed),
                g.degree(v),
                -v,
            ),
        )
        order.append(best)
        placed.add(best)
    return order


def count_homs_brute(
    g: Graph, p: Pattern, max_host_vertices: int | None = None
) -> int:
    """Exact |Hom(H -> G)| by backtracking over vertex maps.

    Pattern vertices are assigned in a connectivity-respecting order with
    pruning on every adjacent already-assigned pair; a trailing block of
    pattern vertices whose neighbors are all assigned contributes
    multiplicatively instead of being enumerated.
    """
    n = g.vertex_count
    if max_host_vertices is not None and n > max_host_vertices:
        raise HostSizeError(
            f"host has {n} vertices, oracle limit is {max_host_vertices}"
        )
    if n == 0:
        return 0
    k = p.k
    order = _brute_order(p)
    pos = {v: i for i, v in enumerate(order)}
    anchors: list[tuple[int, ...]] = []
    for i, v in enumerate(order):
        anchors.append(tuple(sorted(pos[w] for w in p.graph.adjacency[v] if pos[w] < i)))

    tail_start = k
    while tail_start > 1 and all(
        pos[w] < tail_start - 1 for w in p.graph.adjacency[order[tail_start - 1]]
    ):
        tail_start -= 1

    hadj = g.adjacency
    img = [0] * k
    total = 0

    def tail_factor() -> int:
        factor = 1
        for i in range(tail_start, k):
            a = anchors[i]
            base = hadj[img[a[0]]]
            if len(a) == 1:
                cnt = len(base)
            else:
                cnt = 0
                for c in base:
                    ok = True
                    for q in a[1:]:
                        if c not in hadj[img[q]]:
                            ok = False
                            break
                    if ok:
                        cnt += 1
            if cnt == 0:
                return 0
            factor *= cnt
        return factor

    def rec(i: int) -> None:
        nonlocal total
        if i == tail_start:
            total += tail_factor()
            return
        a = anchors[i]
        first = hadj[img[a[0]]]
        rest = a[1:]
        for c in first:
            ok = True
            for q in rest:
                if c not in hadj[img[q]]:
                    ok = False
                    break
            if ok:
                img[i] = c
                rec(i + 1)

    if tail_start == 0:
        return 0  # unreachable: tail_start >= 1 always
    for v0 in range(n):
        img[0] = v0
        if tail_start == 1:
            total += tail_factor()
        else:
            rec(1)
    return total


# ---------------------------------------------------------------------------
# decomposition engine


def _scan_plan(
    hdir: OrientedGraph, root_vertices: Iterable[int]
) -> tuple[list[int], list[tuple[int, tuple[int, ...]]]]:
    """Assignment plan for the sub-DAG induced on root_vertices.

    Returns (order, steps): order is a topological order whose single
    initial element is the sub-DAG's unique source; steps[i-1] gives, for
    order[i], the plan position of its earliest-assigned in-neighbor and
    the positions of its remaining in-neighbors.
    """
    vs = sorted(set(root_vertices))
    vset = set(vs)
    ins: dict[int, list[int]] = {v: [] for v in vs}
    for u in vs:
        for w in hdir.out_neighbors[u]:
            if w in vset:
                ins[w].append(u)
    indeg = {v: len(ins[v]) for v in vs}
    heap = [v for v in vs if indeg[v] == 0]
    if len(heap) != 1:
        raise ValueError("root set is not the reachable set of a single source")
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in hdir.out_neighbors[v]:
            if w in vset:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
    if len(order) != len(vs):
        raise ValueError("root set induces a cyclic sub-digraph")
    pos = {v: i for i, v in enumerate(order)}
    steps = []
    for v in order[1:]:
        inpos = sorted(pos[u] for u in ins[v])
        steps.append((inpos[0], tuple(inpos[1:])))
    return order, steps


def enumerate_reachable_homs(
    gdir: OrientedGraph, hdir: OrientedGraph, root_set: Iterable[int]
) -> Iterator[dict[int, int]]:
    """Stream every direction-preserving map of hdir[root_set] into gdir.

    The sub-DAG's source is assigned first (all host vertices), then the
    rest in topological order, drawing candidates from the out-neighborhood
    of one already-assigned in-neighbor and checking all other incident
    constraints.
    """
    order, steps = _scan_plan(hdir, root_set)
    n = gdir.vertex_count
    out = gdir.out_neighbors
    depth = len(order)
    img = [0] * depth

    def rec(i: int) -> Iterator[dict[int, int]]:
        if i == depth:
            yield dict(zip(order, img))
            return
        ppos, checks = steps[i - 1]
        for c in out[img[ppos]]:
            ok = True
            for q in checks:
                if c not in out[img[q]]:
                    ok = False
                    break
            if ok:
                img[i] = c
                yield from rec(i + 1)

    for v0 in range(n):
        img[0] = v0
        if depth == 1:
            yield {order[0]: v0}
        else:
            yield from rec(1)


def _pack(img: list[int], positions: tuple[int, ...], base: int) -> int:
    key = 0
    for pos in reversed(positions):
        key = key * base + img[pos]
    return key


def _node_pass(
    gdir: OrientedGraph,
    hdir: OrientedGraph,
    node_source: int,
    root_vertices: list[int],
    child_tables: list[tuple[tuple[int, ...], dict[int, int]]],
    parent_separator: tuple[int, ...] | None,
) -> dict[int, int] | int:
    """One leaves-up DP step: scan maps of reachable(node_source), multiply
    child table entries, accumulate by the parent-separator key.

    child_tables pairs each child's separator (sorted pattern vertices) with
    its packed table. Returns the packed table, or the scalar total when
    ``parent_separator`` is None (root).
    """
    order, steps = _scan_plan(hdir, root_vertices)
    pos = {v: i for i, v in enumerate(order)}
    n = gdir.vertex_count
    out = gdir.out_neighbors

    const_factor = 1
    triggers: dict[int, list[tuple[tuple[int, ...], dict[int, int]]]] = {}
    needed = [False] * len(order)
    for sep, table in child_tables:
        if not sep:
            const_factor *= table.get(0, 0)
            continue
        positions = tuple(pos[v] for v in sep)
        for q in positions:
            needed[q] = True
        triggers.setdefault(max(positions), []).append((positions, table))
    parent_positions: tuple[int, ...] | None = None
    if parent_separator is not None:
        parent_positions = tuple(pos[v] for v in parent_separator)
        for q in parent_positions:
            needed[q] = True
    for ppos, checks in steps:
        needed[ppos] = True
        for q in checks:
            needed[q] = True

    if const_factor == 0:
        return 0 if parent_separator is None else {}

    tail_start = len(order)
    while tail_start > 1 and not needed[tail_start - 1]:
        tail_start -= 1

    img = [0] * len(order)
    table: dict[int, int] = {}
    total = 0

    def finish(factor: int) -> None:
        nonlocal total
        for i in range(tail_start, len(order)):
            ppos, checks = steps[i - 1]
            base = out[img[ppos]]
            if checks:
                cnt = 0
                for c in base:
                    ok = True
                    for q in checks:
                        if c not in out[img[q]]:
                            ok = False
                            break
                    if ok:
                        cnt += 1
            else:
                cnt = len(base)
            if cnt == 0:
                return
            factor *= cnt
        if parent_positions is None:
            total += factor
        else:
            key = _pack(img, parent_positions, n)
            table[key] = table.get(key, 0) + factor

    def rec(i: int, factor: int) -> None:
        ppos, checks = steps[i - 1]
        for c in out[img[ppos]]:
            ok = True
            for q in checks:
                if c not in out[img[q]]:
                    ok = False
                    break
            if not ok:
                continue
            img[i] = c
            f = factor
            fired = triggers.get(i)
            if fired:
                for positions, child in fired:
                    f *= child.get(_pack(img, positions, n), 0)
                    if f == 0:
                        break
                if f == 0:
                    continue
            if i + 1 == tail_start:
                finish(f)
            else:
                rec(i + 1, f)

    zero_trigger = triggers.get(0)
    for v0 in range(n):
        img[0] = v0
        f = const_factor
        if zero_trigger:
            for positions, child in zero_trigger:
                f *= child.get(_pack(img, positions, n), 0)
                if f == 0:
                    break
            if f == 0:
                continue
        if tail_start == 1:
            finish(f)
        else:
            rec(1, f)

    return total if parent_separator is None else table


def decomposition_tables(
    gdir: OrientedGraph, hdir: OrientedGraph, t: DagTreeDecomposition
) -> tuple[int, dict[int, HomTable]]:
    """Run the width-1 DP; return the directed count and every non-root
    node's HomTable (keyed by node source vertex)."""
    if t.width != 1:
        raise InvalidDecompositionError("decomposition width exceeds one")
    if not validate_decomposition(hdir, t):
        raise InvalidDecompositionError("decomposition violates the tree properties")

    masks = reach_masks(hdir)
    node_sources = [min(b) for b in t.bags]
    neighbors = t.neighbors()

    # re-root at the bag with the largest reachable set, ties to smallest id
    root = max(
        range(len(t.bags)),
        key=lambda i: (bin(masks[node_sources[i]]).count("1"), -node_sources[i]),
    )
    parent: dict[int, int | None] = {root: None}
    order = [root]
    for x in order:
        for y in neighbors[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)

    def bits(mask: int) -> list[int]:
        vs = []
        v = 0
        while mask:
            if mask & 1:
                vs.append(v)
            mask >>= 1
            v += 1
        return vs

    n = gdir.vertex_count
    tables: dict[int, dict[int, int]] = {}
    out_tables: dict[int, HomTable] = {}
    total = 0
    for node in reversed(order):
        s = node_sources[node]
        children = [y for y in neighbors[node] if parent.get(y) == node]
        child_specs = []
        for c in children:
            sep = tuple(bits(masks[node_sources[c]] & masks[s]))
            child_specs.append((sep, tables.pop(c)))
        if parent[node] is None:
            result = _node_pass(gdir, hdir, s, bits(masks[s]), child_specs, None)
            total = result
        else:
            sep = tuple(bits(masks[s] & masks[node_sources[parent[node]]]))
            result = _node_pass(gdir, hdir, s, bits(masks[s]), child_specs, sep)
            tables[node] = result
            out_tables[s] = HomTable(separator=sep, vertex_base=max(n, 1), packed=result)
    return total, out_tables


def count_homs_decomposed(
    gdir: OrientedGraph, hdir: OrientedGraph, t: DagTreeDecomposition
) -> int:
    """Exact |Hom(hdir -> gdir)| via the width-1 decomposition DP."""
    total, _ = decomposition_tables(gdir, hdir, t)
    return total


# ---------------------------------------------------------------------------
# engine dispatch


_PARALLEL_STATE: tuple | None = None


def _parallel_orientation_count(index: int) -> int:
    gdir, pairs = _PARALLEL_STATE  # type: ignore[misc]
    hdir, t = pairs[index]
    return count_homs_decomposed(gdir, hdir, t)


def _sum_over_orientations(gdir: OrientedGraph, p: Pattern, workers: int) -> int:
    pairs = list(zip(p.orientations, p.width1_decompositions))
    if workers <= 1 or len(pairs) <= 1:
        return sum(count_homs_decomposed(gdir, h, t) for h, t in pairs)
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        return sum(count_homs_decomposed(gdir, h, t) for h, t in pairs)
    global _PARALLEL_STATE
    _PARALLEL_STATE = (gdir, pairs)
    try:
        with concurrent.futures.ProcessPoolExecutor(
            max_workers=workers, mp_context=ctx
        ) as pool:
            return sum(pool.map(_parallel_orientation_count, range(len(pairs))))
    finally:
        _PARALLEL_STATE = None


def count_homs(
    g: Graph,
    p: Pattern,
    engine: Engine = "auto",
    *,
    workers: int = 1,
    max_host_vertices: int | None = None,
) -> tuple[int, str]:
    """Exact |Hom(H -> G)| and the engine that produced it.

    engine="dtd" orients the host by a degeneracy order and sums the
    decomposition DP over all acyclic pattern orientations; it requires the
    pattern's longest induced cycle to have length at most 5 and raises
    HardPatternError (carrying the certificate) otherwise. engine="brute"
    backtracks directly. engine="auto" picks dtd exactly when it applies.
    """
    if engine not in ("auto", "dtd", "brute"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "dtd" and p.licl >= 6:
        raise HardPatternError(hardness_certificate(p))
    if engine == "auto":
        engine = "dtd" if p.licl <= 5 else "brute"
    if engine == "brute":
        return count_homs_brute(g, p, max_host_vertices), "brute"
    order, _ = degeneracy_order(g)
    gdir = orient(g, order)
    return _sum_over_orientations(gdir, p, workers), "dtd"


def count_partitioned_homs(
    g: Graph,
    p: Pattern,
    part: VertexPartition,
    *,
    engine: Engine = "auto",
    workers: int = 1,
) -> int:
    """Homomorphisms of p in g whose image meets every part of ``part``.

    Inclusion-exclusion over all 2^k part subfamilies: each subfamily F
    contributes (-1)^|F| times the count in g with the union of F deleted.
    """
    if part.vertex_count != g.vertex_count:
        raise ValueError("partition is over a different vertex set")
    if part.size != p.k:
        raise ValueError(
            f"partition has {part.size} parts, pattern has {p.k} vertices"
        )
    total = 0
    size = part.size
    for mask in range(1 << size):
        deleted: set[int] = set()
        sign = 1
        for i in range(size):
            if mask >> i & 1:
                deleted |= part.parts[i]
                sign = -sign
        sub = delete_vertices(g, deleted) if deleted else g
        count, _ = count_homs(sub, p, engine, workers=workers)
        total += sign * count
    return total


def _exact_div(numerator: int, divisor: int, what: str) -> int:
    quotient, remainder = divmod(numerator, divisor)
    if remainder:
        raise CountConsistencyError(
            f"{what}: {numerator} is not divisible by {divisor}"
        )
    return quotient


def count_partitioned_matches(
    g: Graph,
    p: Pattern,
    part: VertexPartition,
    *,
    engine: Engine = "auto",
    workers: int = 1,
) -> int:
    """Matches of p in g with exactly one vertex per part.

    Partitioned homomorphisms divided by |Aut(p)|; the division must be
    exact, anything else signals a counting bug.
    """
    homs = count_partitioned_homs(g, p, part, engine=engine, workers=workers)
    return _exact_div(homs, automorphism_count(p), "partitioned homomorphisms")
