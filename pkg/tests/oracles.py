"""Independent oracles for cross-checking the engine.

Everything here recomputes from definitions with deliberately naive
algorithms (subset exhaustion, full map products, matrix powers, DFS cycle
enumeration) and shares no code path with the package's counting or
decomposition machinery.
"""

from itertools import combinations, product


def brute_degeneracy(adjacency) -> int:
    """max over non-empty vertex subsets of the minimum induced degree."""
    n = len(adjacency)
    adjset = [set(a) for a in adjacency]
    best = 0
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            ss = set(subset)
            mindeg = min(len(adjset[v] & ss) for v in subset)
            best = max(best, mindeg)
    return best


def count_triangles_cubic(adjacency) -> int:
    n = len(adjacency)
    adjset = [set(a) for a in adjacency]
    total = 0
    for u, v, w in combinations(range(n), 3):
        if v in adjset[u] and w in adjset[u] and w in adjset[v]:
            total += 1
    return total


def hom_count_product(pattern_edges, k, host_adjacency) -> int:
    """|Hom(H -> G)| by iterating every one of the n^k vertex maps."""
    n = len(host_adjacency)
    adjset = [set(a) for a in host_adjacency]
    total = 0
    for image in product(range(n), repeat=k):
        if all(image[v] in adjset[image[u]] for u, v in pattern_edges):
            total += 1
    return total


def directed_hom_count(pattern_out, host_out) -> int:
    """Direction-preserving map count by plain backtracking in vertex-id order."""
    k = len(pattern_out)
    n = len(host_out)
    host_sets = [set(o) for o in host_out]
    # directed pattern edges with both endpoints' assignment positions
    edges = [(u, v) for u in range(k) for v in pattern_out[u]]
    img = [0] * k
    total = 0

    def rec(i):
        nonlocal total
        if i == k:
            total += 1
            return
        for c in range(n):
            img[i] = c
            ok = True
            for u, v in edges:
                if u <= i and v <= i and u != v:
                    if max(u, v) == i and img[v] not in host_sets[img[u]]:
                        ok = False
                        break
            if ok:
                rec(i + 1)

    rec(0)
    return total


def closed_walk_count(adjacency, length) -> int:
    """trace(A^length) with exact integer matrix powers: homs of the length-cycle."""
    n = len(adjacency)
    a = [[1 if j in set(adjacency[i]) else 0 for j in range(n)] for i in range(n)]

    def matmul(x, y):
        return [
            [sum(x[i][t] * y[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]

    power = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(length):
        power = matmul(power, a)
    return sum(power[i][i] for i in range(n))


def max_chordless_cycle(adjacency) -> int:
    """Longest induced cycle length via DFS cycle enumeration plus a chord check."""
    n = len(adjacency)
    adjset = [set(a) for a in adjacency]
    best = 0

    def chordless(path):
        cs = set(path)
        inside = sum(1 for v in path for w in adjset[v] if w in cs) // 2
        return inside == len(path)

    def dfs(path, visited):
        nonlocal best
        last = path[-1]
        for w in adjacency[last]:
            if w == path[0] and len(path) >= 3:
                if path[1] < path[-1] and chordless(path):
                    best = max(best, len(path))
            elif w > path[0] and w not in visited:
                visited.add(w)
                path.append(w)
                dfs(path, visited)
                path.pop()
                visited.remove(w)

    for s in range(n):
        dfs([s], {s})
    return best


def reachable_sets_bfs(out_neighbors):
    """Per-vertex forward closures by plain BFS over sets."""
    n = len(out_neighbors)
    result = []
    for s in range(n):
        seen = {s}
        frontier = [s]
        while frontier:
            u = frontier.pop()
            for w in out_neighbors[u]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        result.append(seen)
    return result


def unique_reachability_edges(out_neighbors, subset):
    """Def-level recomputation of the unique reachability edge set."""
    reach = reachable_sets_bfs(out_neighbors)
    subset = sorted(subset)
    edges = set()
    for i, s1 in enumerate(subset):
        for s2 in subset[i + 1 :]:
            others = set()
            for s in subset:
                if s not in (s1, s2):
                    others |= reach[s]
            if (reach[s1] & reach[s2]) - others:
                edges.add((s1, s2))
    return edges


def enumerate_partitioned_embeddings(pattern_edges, k, host_adjacency, parts):
    """Injective homomorphisms whose image meets each part exactly once.

    Backtracking in pattern-vertex id order, pruning on adjacency, image
    injectivity, and one-vertex-per-part as assignments land. Yields image
    tuples; intended for micro-scale instances only.
    """
    n = len(host_adjacency)
    adjset = [set(a) for a in host_adjacency]
    part_of = {}
    for idx, part in enumerate(parts):
        for v in part:
            part_of[v] = idx
    earlier_nbrs = [
        [u for u, v in pattern_edges if v == w] + [v for u, v in pattern_edges if u == w]
        for w in range(k)
    ]
    earlier_nbrs = [[u for u in nbrs if u < w] for w, nbrs in enumerate(earlier_nbrs)]
    img = [0] * k
    used_vertices: set = set()
    used_parts: set = set()

    def rec(i):
        if i == k:
            yield tuple(img)
            return
        anchors = earlier_nbrs[i]
        candidates = (
            set.intersection(*(adjset[img[u]] for u in anchors))
            if anchors
            else range(n)
        )
        for c in candidates:
            if c in used_vertices or part_of[c] in used_parts:
                continue
            img[i] = c
            used_vertices.add(c)
            used_parts.add(part_of[c])
            yield from rec(i + 1)
            used_vertices.remove(c)
            used_parts.remove(part_of[c])

    yield from rec(0)


def partitioned_match_count(pattern_edges, k, host_adjacency, parts) -> int:
    """Distinct one-vertex-per-part subgraphs isomorphic to the pattern.

    Matches are subgraphs, so the image edge sets of the qualifying
    embeddings are collected and deduplicated.
    """
    found = set()
    for image in enumerate_partitioned_embeddings(
        pattern_edges, k, host_adjacency, parts
    ):
        found.add(
            frozenset(frozenset((image[u], image[v])) for u, v in pattern_edges)
        )
    return len(found)
