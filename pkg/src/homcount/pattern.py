"""Pattern analysis.

Everything about the small pattern graph: longest induced cycle length,
acyclic orientation enumeration, source reachability, unique reachability
graphs, width-1 DAG tree decomposition construction and validation,
hardness certificates for patterns whose longest induced cycle has length
at least six, and automorphism counting.

Pattern vertex sets fit in a machine word, so reachability sets are
bitmask ints internally; the public API exposes frozensets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Mapping

from .graph import Graph, OrientedGraph

DEFAULT_MAX_PATTERN_VERTICES = 8


class PatternSizeError(ValueError):
    """Pattern exceeds the configured vertex limit."""


class DisconnectedPatternError(ValueError):
    """Patterns must be connected."""


class Pattern:
    """A connected simple pattern graph with cached analysis results.

    ``max_vertices`` bounds k because orientation enumeration walks all k!
    vertex orderings; raising it past the default 8 gets factorially more
    expensive.
    """

    def __init__(self, graph: Graph, max_vertices: int = DEFAULT_MAX_PATTERN_VERTICES):
        if graph.vertex_count == 0:
            raise DisconnectedPatternError("pattern must have at least one vertex")
        if graph.vertex_count > max_vertices:
            raise PatternSizeError(
                f"pattern has {graph.vertex_count} vertices, limit is {max_vertices}"
            )
        if not graph.is_connected():
            raise DisconnectedPatternError("pattern graph is not connected")
        self.graph = graph
        self.max_vertices = max_vertices

    @property
    def k(self) -> int:
        return self.graph.vertex_count

    @cached_property
    def licl(self) -> int:
        return longest_induced_cycle(self)

    @cached_property
    def orientations(self) -> tuple[OrientedGraph, ...]:
        return tuple(enumerate_acyclic_orientations(self))

    @cached_property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.graph.edges())

    @cached_property
    def width1_decompositions(self) -> tuple["DagTreeDecomposition", ...]:
        """One validated width-1 decomposition per acyclic orientation.

        Only defined for patterns with longest induced cycle at most 5;
        a build failure on any orientation is a hard error here.
        """
        built = []
        for h in self.orientations:
            t = build_width1_decomposition(h)
            if isinstance(t, Width1Failure):
                raise ValueError(
                    "no width-1 decomposition: blocked by sources "
                    f"{sorted(t.blocking_sources)} (longest induced cycle is "
                    f"{self.licl})"
                )
            built.append(t)
        return tuple(built)

    def __repr__(self) -> str:
        return f"Pattern(k={self.k}, m={self.graph.edge_count}, licl={self.licl})"


# ---------------------------------------------------------------------------
# bitmask plumbing


def _adjacency_masks(g: Graph) -> list[int]:
    masks = []
    for nbrs in g.adjacency:
        m = 0
        for w in nbrs:
            m |= 1 << w
        masks.append(m)
    return masks


def reach_masks(h: OrientedGraph) -> list[int]:
    """Per-vertex descendant bitmask (self included), for pattern-sized DAGs."""
    topo = h.topological_order()
    masks = [0] * h.vertex_count
    for v in reversed(topo):
        m = 1 << v
        for w in h.out_neighbors[v]:
            m |= masks[w]
        masks[v] = m
    return masks


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _set_to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# ---------------------------------------------------------------------------
# basic pattern operations


def longest_induced_cycle(p: Pattern) -> int:
    """Length of the longest chordless cycle, 0 if the pattern has none.

    Exhaustive over vertex subsets of size >= 3: a subset carries an induced
    cycle of its own size exactly when every member has exactly two
    neighbors inside it and the subset is connected.
    """
    g = p.graph
    k = g.vertex_count
    adj = _adjacency_masks(g)
    best = 0
    for size in range(3, k + 1):
        if size <= best:
            continue
        for subset in combinations(range(k), size):
            smask = _set_to_mask(subset)
            if any(bin(adj[v] & smask).count("1") != 2 for v in subset):
                continue
            # degrees all 2; connected <=> single cycle
            seen = 1 << subset[0]
            stack = [subset[0]]
            while stack:
                v = stack.pop()
                rest = adj[v] & smask & ~seen
                while rest:
                    w = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    seen |= 1 << w
                    stack.append(w)
            if seen == smask:
                best = size
                break
    return best


def orientation_from_mask(p: Pattern, mask: int) -> OrientedGraph:
    """Build the orientation where bit i reverses edge i of ``p.edge_list``.

    Bit i clear orients edge (u, v) with u < v as u -> v; set as v -> u.
    Raises ValueError if the result has a directed cycle.
    """
    k = p.k
    out: list[list[int]] = [[] for _ in range(k)]
    for i, (u, v) in enumerate(p.edge_list):
        if mask >> i & 1:
            out[v].append(u)
        else:
            out[u].append(v)
    h = OrientedGraph(base=p.graph, out_neighbors=tuple(tuple(sorted(o)) for o in out))
    h.topological_order()  # raises on a cycle
    return h


def orientation_mask(p: Pattern, h: OrientedGraph) -> int:
    """Edge-direction bitmask of an orientation of this pattern."""
    mask = 0
    for i, (u, v) in enumerate(p.edge_list):
        if u in h.out_neighbors[v]:
            mask |= 1 << i
    return mask


def enumerate_acyclic_orientations(p: Pattern) -> list[OrientedGraph]:
    """All distinct acyclic orientations of the pattern.

    Iterates the k! vertex orderings, orients each edge low-to-high in the
    ordering, and deduplicates by edge-direction bitmask (first occurrence
    wins, so the output order is deterministic).
    """
    k = p.k
    edges = p.edge_list
    seen: set[int] = set()
    result: list[OrientedGraph] = []
    pos = [0] * k
    for perm in permutations(range(k)):
        for i, v in enumerate(perm):
            pos[v] = i
        mask = 0
        for i, (u, v) in enumerate(edges):
            if pos[v] < pos[u]:
                mask |= 1 << i
        if mask not in seen:
            seen.add(mask)
            result.append(orientation_from_mask(p, mask))
    return result


def sources(h: OrientedGraph) -> tuple[int, ...]:
    """Vertices of in-degree 0, ascending."""
    indeg = h.in_degrees
    return tuple(v for v in range(h.vertex_count) if indeg[v] == 0)


def reachable(h: OrientedGraph, s: int) -> frozenset[int]:
    """Forward closure of s, including s itself."""
    return _mask_to_set(reach_masks(h)[s])


# ---------------------------------------------------------------------------
# unique reachability


@dataclass(frozen=True)
class UniqueReachabilityGraph:
    """The auxiliary simple graph over a source subset.

    An edge joins s1 < s2 when some pattern vertex is reachable from both
    but from no other source of the subset; ``witnesses`` stores one such
    vertex per edge.
    """

    sources: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    witnesses: Mapping[tuple[int, int], int]

    def has_cycle(self) -> bool:
        parent = {s: s for s in self.sources}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return True
            parent[ra] = rb
        return False

    def has_triangle(self, triple: Iterable[int]) -> bool:
        a, b, c = sorted(triple)
        es = set(self.edges)
        return (a, b) in es and (b, c) in es and (a, c) in es


def unique_reachability_graph(
    h: OrientedGraph, subset: Iterable[int]
) -> UniqueReachabilityGraph:
    """Unique reachability graph over ``subset`` of the orientation's sources."""
    subset = tuple(sorted(set(subset)))
    src = set(sources(h))
    for s in subset:
        if s not in src:
            raise ValueError(f"vertex {s} is not a source of the orientation")
    masks = reach_masks(h)
    edges: list[tuple[int, int]] = []
    witnesses: dict[tuple[int, int], int] = {}
    for i, s1 in enumerate(subset):
        for s2 in subset[i + 1 :]:
            others = 0
            for s in subset:
                if s != s1 and s != s2:
                    others |= masks[s]
            unique = masks[s1] & masks[s2] & ~others
            if unique:
                edges.append((s1, s2))
                witnesses[(s1, s2)] = (unique & -unique).bit_length() - 1
    return UniqueReachabilityGraph(subset, tuple(edges), witnesses)


def is_intersection_cover(h: OrientedGraph, s: int, s1: int, s2: int) -> bool:
    """True iff reachable(s1) & reachable(s2) is contained in reachable(s)."""
    src = set(sources(h))
    for x in (s, s1, s2):
        if x not in src:
            raise ValueError(f"vertex {x} is not a source of the orientation")
    masks = reach_masks(h)
    return masks[s1] & masks[s2] & ~masks[s] == 0


# ---------------------------------------------------------------------------
# DAG tree decompositions


@dataclass(frozen=True)
class DagTreeDecomposition:
    """A rooted tree over bags of sources.

    ``parent[i]`` is the parent node index (None at the root),
    ``separators[i]`` the pattern vertices in reachable(bags[i]) &
    reachable(bags[parent[i]]), and ``covered[i]`` the union of reachable
    sets over bag sources in i's subtree. The width-1 builder always
    produces singleton bags.
    """

    bags: tuple[frozenset[int], ...]
    parent: tuple[int | None, ...]
    separators: tuple[frozenset[int] | None, ...]
    covered: tuple[frozenset[int], ...]

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags)

    @property
    def root(self) -> int:
        return self.parent.index(None)

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in self.bags]
        for i, par in enumerate(self.parent):
            if par is not None:
                ch[par].append(i)
        return ch

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for i, par in enumerate(self.parent):
            if par is not None:
                nb[i].append(par)
                nb[par].append(i)
        return nb


@dataclass(frozen=True)
class Width1Failure:
    """No good-pair exists for ``blocking_sources``; the pattern's longest
    induced cycle has length at least six."""

    blocking_sources: frozenset[int]


def _finalize_decomposition(
    h: OrientedGraph, nodes: tuple[int, ...], edges: frozenset[frozenset[int]]
) -> DagTreeDecomposition:
    """Root the builder's tree (max reachable set, ties to smallest source)."""
    masks = reach_masks(h)
    adj: dict[int, list[int]] = {s: [] for s in nodes}
    for e in edges:
        a, b = tuple(e)
        adj[a].append(b)
        adj[b].append(a)
    root = max(nodes, key=lambda s: (bin(masks[s]).count("1"), -s))
    order = [root]
    parent_of: dict[int, int | None] = {root: None}
    for s in order:
        for t in sorted(adj[s]):
            if t not in parent_of:
                parent_of[t] = s
                order.append(t)

    index = {s: i for i, s in enumerate(order)}
    bags = tuple(frozenset({s}) for s in order)
    parent = tuple(None if parent_of[s] is None else index[parent_of[s]] for s in order)
    separators = tuple(
        None
        if parent_of[s] is None
        else _mask_to_set(masks[s] & masks[parent_of[s]])
        for s in order
    )
    covered_masks = [masks[s] for s in order]
    for i in range(len(order) - 1, 0, -1):
        covered_masks[parent[i]] |= covered_masks[i]
    covered = tuple(_mask_to_set(m) for m in covered_masks)
    return DagTreeDecomposition(bags, parent, separators, covered)


def build_width1_decomposition(
    h: OrientedGraph,
) -> DagTreeDecomposition | Width1Failure:
    """Build a width-1 DAG tree decomposition, or report the blocking subset.

    Recursive with memoization keyed by source-subset bitmask. Subsets of
    size 1 and 2 are a single node / two linked nodes. For a larger subset
    the scan tries sources x ascending, then leaves of the subset-minus-x
    tree ascending; a leaf whose tree neighbor is an intersection-cover of
    the leaf and x gets re-attached to that neighbor in the tree built for
    subset-minus-leaf. If no source admits such a leaf the subset is
    returned as a failure; the final tree is validated before returning.
    """
    src = sources(h)
    masks = reach_masks(h)
    src_index = {s: i for i, s in enumerate(src)}
    memo: dict[int, frozenset[frozenset[int]] | Width1Failure] = {}

    def covers(d: int, x: int, leaf: int) -> bool:
        return masks[x] & masks[leaf] & ~masks[d] == 0

    def build(bitmask: int) -> frozenset[frozenset[int]] | Width1Failure:
        cached = memo.get(bitmask)
        if cached is not None:
            return cached
        members = [src[i] for i in range(len(src)) if bitmask >> i & 1]
        result: frozenset[frozenset[int]] | Width1Failure
        if len(members) == 1:
            result = frozenset()
        elif len(members) == 2:
            result = frozenset({frozenset(members)})
        else:
            result = Width1Failure(frozenset(members))
            done = False
            for x in members:
                sub = build(bitmask & ~(1 << src_index[x]))
                if isinstance(sub, Width1Failure):
                    result = sub
                    done = True
                    break
                degree: dict[int, list[int]] = {s: [] for s in members if s != x}
                for e in sub:
                    a, b = tuple(e)
                    degree[a].append(b)
                    degree[b].append(a)
                for leaf in sorted(degree):
                    if len(degree[leaf]) != 1:
                        continue
                    d = degree[leaf][0]
                    if covers(d, x, leaf):
                        t_minus_leaf = build(bitmask & ~(1 << src_index[leaf]))
                        if isinstance(t_minus_leaf, Width1Failure):
                            result = t_minus_leaf
                        else:
                            result = t_minus_leaf | {frozenset({leaf, d})}
                        done = True
                        break
                if done:
                    break
        memo[bitmask] = result
        return result

    full = (1 << len(src)) - 1
    built = build(full)
    if isinstance(built, Width1Failure):
        return built
    decomposition = _finalize_decomposition(h, src, built)
    if not validate_decomposition(h, decomposition):
        raise RuntimeError("width-1 builder produced an invalid decomposition")
    return decomposition


def validate_decomposition(h: OrientedGraph, t: DagTreeDecomposition) -> bool:
    """Exhaustively check the three decomposition properties.

    Bags are source subsets, their union is the full source set, the parent
    links form one tree, and for every node triple with B on the B1-B2 path,
    reachable(B1) & reachable(B2) is contained in reachable(B).
    """
    src = set(sources(h))
    union: set[int] = set()
    for bag in t.bags:
        if not bag or not bag <= src:
            return False
        union |= bag
    if union != src:
        return False

    n = len(t.bags)
    roots = [i for i in range(n) if t.parent[i] is None]
    if len(roots) != 1:
        return False
    seen = set(roots)
    frontier = list(roots)
    children = t.children()
    while frontier:
        x = frontier.pop()
        for c in children[x]:
            if c in seen:
                return False
            seen.add(c)
            frontier.append(c)
    if len(seen) != n:
        return False

    masks = reach_masks(h)
    bag_mask = []
    for b in t.bags:
        m = 0
        for s in b:
            m |= masks[s]
        bag_mask.append(m)

    depth = [0] * n
    order = [roots[0]]
    for x in order:
        for c in children[x]:
            depth[c] = depth[x] + 1
            order.append(c)

    def path_between(a: int, b: int) -> list[int]:
        pa, pb = a, b
        left, right = [], []
        while depth[pa] > depth[pb]:
            left.append(pa)
            pa = t.parent[pa]
        while depth[pb] > depth[pa]:
            right.append(pb)
            pb = t.parent[pb]
        while pa != pb:
            left.append(pa)
            right.append(pb)
            pa = t.parent[pa]
            pb = t.parent[pb]
        return left + [pa] + right[::-1]

    for i in range(n):
        for j in range(i + 1, n):
            common = bag_mask[i] & bag_mask[j]
            if not common:
                continue
            for b in path_between(i, j):
                if common & ~bag_mask[b]:
                    return False
    return True


# ---------------------------------------------------------------------------
# hardness certificates


@dataclass(frozen=True)
class HardnessCertificate:
    """An orientation whose full-source unique reachability graph contains a
    triangle, so no width-1 decomposition exists for it."""

    orientation: OrientedGraph
    edge_mask: int
    triangle: tuple[int, int, int]
    witnesses: tuple[int, int, int]


def canonical_longest_cycle(p: Pattern) -> tuple[int, ...]:
    """The longest induced cycle in traversal order, deterministically chosen.

    Among maximum-length induced cycles the lexicographically smallest
    vertex set wins; traversal starts at its smallest vertex and proceeds
    toward the smaller of that vertex's two cycle neighbors.
    """
    r = p.licl
    if r == 0:
        raise ValueError("pattern has no induced cycle")
    g = p.graph
    adj = _adjacency_masks(g)
    best: tuple[int, ...] | None = None
    for subset in combinations(range(p.k), r):
        smask = _set_to_mask(subset)
        if any(bin(adj[v] & smask).count("1") != 2 for v in subset):
            continue
        seen = 1 << subset[0]
        stack = [subset[0]]
        while stack:
            v = stack.pop()
            rest = adj[v] & smask & ~seen
            while rest:
                w = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                seen |= 1 << w
                stack.append(w)
        if seen == smask:
            best = subset
            break  # combinations() is lexicographic, first hit is smallest
    assert best is not None
    in_cycle = set(best)
    start = best[0]
    second = min(w for w in g.adjacency[start] if w in in_cycle)
    walk = [start, second]
    while len(walk) < r:
        cur, prev = walk[-1], walk[-2]
        nxt = next(w for w in g.adjacency[cur] if w in in_cycle and w != prev)
        walk.append(nxt)
    return tuple(walk)


def hardness_certificate(p: Pattern) -> HardnessCertificate:
    """Construct the hard orientation for a pattern with licl >= 6.

    On the canonical longest induced cycle (length r = 3l + q) the vertices
    at positions 1, l+1, 2l+1 become sources and those at positions 2, l+2,
    2l+2 become sinks; cycle edges point from sources toward sinks,
    non-cycle edges point away from the cycle, and edges off the cycle
    follow ascending vertex id. The sources form a triangle in the unique
    reachability graph, witnessed by the three sinks.
    """
    r = p.licl
    if r < 6:
        raise ValueError(f"pattern has longest induced cycle {r}, need >= 6")
    ell = r // 3
    cyc = canonical_longest_cycle(p)
    on_cycle = set(cyc)
    forward_at = {0, ell, 2 * ell}

    k = p.k
    out: list[set[int]] = [set() for _ in range(k)]
    for i in range(r):
        u, v = cyc[i], cyc[(i + 1) % r]
        if i in forward_at:
            out[u].add(v)
        else:
            out[v].add(u)
    for u, v in p.edge_list:
        if u in on_cycle and v in on_cycle:
            continue
        if u in on_cycle:
            out[u].add(v)
        elif v in on_cycle:
            out[v].add(u)
        else:
            out[min(u, v)].add(max(u, v))

    h = OrientedGraph(base=p.graph, out_neighbors=tuple(tuple(sorted(o)) for o in out))
    h.topological_order()  # must be acyclic

    s1, s2, s3 = cyc[0], cyc[ell], cyc[2 * ell]
    t1, t2, t3 = cyc[1], cyc[ell + 1], cyc[2 * ell + 1]
    ur = unique_reachability_graph(h, sources(h))
    if not ur.has_triangle((s1, s2, s3)):
        raise RuntimeError("hard orientation failed to produce the source triangle")
    masks = reach_masks(h)
    src = sources(h)
    for sink, pair in ((t1, (s1, s2)), (t2, (s2, s3)), (t3, (s3, s1))):
        reachers = [s for s in src if masks[s] >> sink & 1]
        if sorted(reachers) != sorted(pair):
            raise RuntimeError("sink witness is not uniquely pair-reachable")
    return HardnessCertificate(
        orientation=h,
        edge_mask=orientation_mask(p, h),
        triangle=(s1, s2, s3),
        witnesses=(t1, t2, t3),
    )


def automorphism_count(p: Pattern) -> int:
    """Number of adjacency-preserving vertex permutations, by exhaustive filtering."""
    k = p.k
    adj = _adjacency_masks(p.graph)
    count = 0
    for perm in permutations(range(k)):
        ok = True
        for v in range(k):
            mapped = 0
            nbrs = adj[v]
            while nbrs:
                w = (nbrs & -nbrs).bit_length() - 1
                nbrs &= nbrs - 1
                mapped |= 1 << perm[w]
            if mapped != adj[perm[v]]:
                ok = False
                break
        if ok:
            count += 1
    return count
