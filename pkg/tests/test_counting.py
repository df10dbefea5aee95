import random

import pytest

from homcount import (
    CountConsistencyError,
    Graph,
    HardPatternError,
    HostSizeError,
    Pattern,
    VertexPartition,
    count_homs,
    count_homs_brute,
    count_homs_decomposed,
    count_partitioned_homs,
    count_partitioned_matches,
    decomposition_tables,
    degeneracy_order,
    enumerate_reachable_homs,
    orient,
    reachable,
    sources,
)
from homcount.counting import _exact_div
from homcount.pattern import build_width1_decomposition, orientation_from_mask
from conftest import complete_graph, cycle_graph, gnp_graph, path_graph
from oracles import closed_walk_count, directed_hom_count, hom_count_product


def degeneracy_oriented(g: Graph):
    order, _ = degeneracy_order(g)
    return orient(g, order)


def random_connected_pattern(k: int, seed: int) -> Pattern:
    rng = random.Random(seed)
    while True:
        edges = [
            (i, j)
            for i in range(k)
            for j in range(i + 1, k)
            if rng.random() < 0.5
        ]
        g = Graph.from_edges(k, edges)
        if g.is_connected():
            return Pattern(g)


# ---------------------------------------------------------------------------
# brute engine


def test_brute_single_vertex_pattern():
    p = Pattern(Graph.from_edges(1, []))
    g = gnp_graph(17, 0.3, seed=1)
    assert count_homs_brute(g, p) == 17


def test_brute_single_edge_pattern():
    p = Pattern(Graph.from_edges(2, [(0, 1)]))
    g = gnp_graph(15, 0.3, seed=2)
    assert count_homs_brute(g, p) == 2 * g.edge_count


def test_brute_c6_into_k3():
    # trace(A^6) of K3: eigenvalues 2, -1, -1 give 2^6 + 2 = 66
    assert closed_walk_count(complete_graph(3).adjacency, 6) == 66
    assert count_homs_brute(complete_graph(3), Pattern(cycle_graph(6))) == 66


def test_brute_empty_host():
    assert count_homs_brute(Graph(()), Pattern(cycle_graph(3))) == 0


def test_brute_host_size_limit():
    with pytest.raises(HostSizeError):
        count_homs_brute(gnp_graph(10, 0.3, seed=0), Pattern(cycle_graph(3)), 5)


@pytest.mark.parametrize("seed", range(12))
def test_brute_matches_product_oracle(seed):
    p = random_connected_pattern(4, seed)
    g = gnp_graph(7, 0.4, seed=seed + 50)
    assert count_homs_brute(g, p) == hom_count_product(
        p.edge_list, p.k, g.adjacency
    )


@pytest.mark.parametrize("r", [3, 4, 5, 6, 7])
def test_brute_cycles_match_trace_oracle(r):
    g = gnp_graph(10, 0.45, seed=r)
    assert count_homs_brute(g, Pattern(cycle_graph(r))) == closed_walk_count(
        g.adjacency, r
    )


# ---------------------------------------------------------------------------
# reachable-map enumeration


def test_enumerate_single_source_pattern_vertex():
    p = Pattern(Graph.from_edges(1, []))
    h = orientation_from_mask(p, 0)
    g = degeneracy_oriented(gnp_graph(9, 0.3, seed=3))
    maps = list(enumerate_reachable_homs(g, h, [0]))
    assert len(maps) == 9


def test_enumerate_edge_into_oriented_triangle():
    p = Pattern(Graph.from_edges(2, [(0, 1)]))
    h = orientation_from_mask(p, 0)  # 0 -> 1
    tri = orient(cycle_graph(3), (0, 1, 2))  # 0->1, 0->2, 1->2
    maps = list(enumerate_reachable_homs(tri, h, [0, 1]))
    assert len(maps) == 3
    assert all(m[1] in tri.out_neighbors[m[0]] for m in maps)


def test_enumerate_rejects_multi_source_root_set():
    p = Pattern(path_graph(3))
    h = orientation_from_mask(p, 0b10)  # 0->1, 2->1: sources {0, 2}
    g = degeneracy_oriented(gnp_graph(5, 0.5, seed=4))
    with pytest.raises(ValueError, match="single source"):
        list(enumerate_reachable_homs(g, h, [0, 1, 2]))


@pytest.mark.parametrize("seed", range(10))
def test_enumerate_stream_matches_directed_oracle(seed):
    p = random_connected_pattern(5, seed + 100)
    rng = random.Random(seed)
    h = p.orientations[rng.randrange(len(p.orientations))]
    g = gnp_graph(8 + seed % 8, 0.35, seed=seed + 150)
    gdir = degeneracy_oriented(g)
    for s in sources(h):
        root = reachable(h, s)
        stream = list(enumerate_reachable_homs(gdir, h, root))
        # maps must be distinct, direction-preserving, and complete
        assert len({tuple(sorted(m.items())) for m in stream}) == len(stream)
        sub_out = tuple(
            tuple(w for w in h.out_neighbors[v] if w in root) if v in root else ()
            for v in range(p.k)
        )
        # oracle counts homs of the sub-DAG over only its own vertices
        remap = {v: i for i, v in enumerate(sorted(root))}
        oracle_out = [[] for _ in remap]
        for v in sorted(root):
            oracle_out[remap[v]] = [remap[w] for w in sub_out[v]]
        assert len(stream) == directed_hom_count(oracle_out, gdir.out_neighbors)


# ---------------------------------------------------------------------------
# decomposition DP


def test_single_node_tree_equals_stream_length():
    p = Pattern(path_graph(4))
    h = orientation_from_mask(p, 0)  # directed path, one source
    t = build_width1_decomposition(h)
    g = degeneracy_oriented(gnp_graph(12, 0.3, seed=7))
    stream = sum(1 for _ in enumerate_reachable_homs(g, h, reachable(h, 0)))
    assert count_homs_decomposed(g, h, t) == stream


@pytest.mark.parametrize("seed", range(8))
def test_p4_orientations_match_directed_oracle(seed):
    p = Pattern(path_graph(4))
    g = gnp_graph(10 + seed, 0.3, seed=seed + 200)
    gdir = degeneracy_oriented(g)
    for h in p.orientations:
        t = build_width1_decomposition(h)
        assert count_homs_decomposed(gdir, h, t) == directed_hom_count(
            h.out_neighbors, gdir.out_neighbors
        )


@pytest.mark.parametrize("seed", range(5))
def test_c5_orientations_match_directed_oracle(seed):
    p = Pattern(cycle_graph(5))
    g = gnp_graph(9 + seed, 0.35, seed=seed + 300)
    gdir = degeneracy_oriented(g)
    for h in p.orientations:
        t = build_width1_decomposition(h)
        assert count_homs_decomposed(gdir, h, t) == directed_hom_count(
            h.out_neighbors, gdir.out_neighbors
        )


def test_hom_table_soundness():
    # every stored entry equals the number of subtree-consistent partial
    # maps extending its key, per a sub-DAG brute-force oracle
    p = Pattern(path_graph(5))
    g = gnp_graph(11, 0.3, seed=17)
    gdir = degeneracy_oriented(g)
    from homcount.pattern import reach_masks

    for h in p.orientations:
        if len(sources(h)) < 2:
            continue
        t = build_width1_decomposition(h)
        total, tables = decomposition_tables(gdir, h, t)
        masks = reach_masks(h)
        # reconstruct each node's covered set from the re-rooted tree the DP
        # used: covered(node) = union of reach over its subtree
        for s, table in tables.items():
            entries = table.entries
            assert all(v > 0 for v in entries.values())
            # oracle: enumerate all directed homs of the covered sub-DAG
            covered = sorted(_covered_of(t, h, s))
            remap = {v: i for i, v in enumerate(covered)}
            oracle_out = [[] for _ in covered]
            cov = set(covered)
            for v in covered:
                for w in h.out_neighbors[v]:
                    if w in cov:
                        oracle_out[remap[v]].append(remap[w])
            from collections import Counter

            buckets: Counter = Counter()
            _all_directed_maps(oracle_out, gdir.out_neighbors, buckets, table.separator, remap)
            assert dict(buckets) == entries


def _covered_of(t, h, source):
    """Covered set of the node with bag {source} after re-rooting by the DP rule."""
    from homcount.pattern import reach_masks

    masks = reach_masks(h)
    node_sources = [min(b) for b in t.bags]
    neighbors = t.neighbors()
    root = max(
        range(len(t.bags)),
        key=lambda i: (bin(masks[node_sources[i]]).count("1"), -node_sources[i]),
    )
    parent = {root: None}
    order = [root]
    for x in order:
        for y in neighbors[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    idx = node_sources.index(source)
    covered = 0
    stack = [idx]
    while stack:
        x = stack.pop()
        covered |= masks[node_sources[x]]
        stack.extend(y for y in neighbors[x] if parent.get(y) == x)
    return {v for v in range(h.vertex_count) if covered >> v & 1}


def _all_directed_maps(pattern_out, host_out, buckets, separator, remap):
    """Count directed homs grouped by the separator image (oracle helper)."""
    k = len(pattern_out)
    n = len(host_out)
    host_sets = [set(o) for o in host_out]
    edges = [(u, v) for u in range(k) for v in pattern_out[u]]
    img = [0] * k

    def rec(i):
        if i == k:
            key = tuple(img[remap[v]] for v in separator)
            buckets[key] += 1
            return
        for c in range(n):
            img[i] = c
            if all(
                img[v] in host_sets[img[u]]
                for u, v in edges
                if max(u, v) == i and min(u, v) <= i
            ):
                rec(i + 1)

    rec(0)


# ---------------------------------------------------------------------------
# engine dispatch


def test_count_homs_c4_into_k4():
    # trace(A^4) of K4: eigenvalues 3, -1, -1, -1 give 81 + 3 = 84
    assert closed_walk_count(complete_graph(4).adjacency, 4) == 84
    count, engine = count_homs(complete_graph(4), Pattern(cycle_graph(4)))
    assert engine == "dtd"
    assert count == 84


def test_count_homs_triangle_into_bipartite_host():
    count, engine = count_homs(cycle_graph(6), Pattern(cycle_graph(3)), "auto")
    assert count == 0
    assert engine == "dtd"


def test_count_homs_auto_picks_brute_for_hard():
    count, engine = count_homs(complete_graph(3), Pattern(cycle_graph(6)), "auto")
    assert count == 66
    assert engine == "brute"


def test_count_homs_dtd_refuses_hard_pattern():
    with pytest.raises(HardPatternError) as exc:
        count_homs(complete_graph(3), Pattern(cycle_graph(6)), "dtd")
    assert exc.value.certificate.triangle == (0, 2, 4)


def test_count_homs_rejects_unknown_engine():
    with pytest.raises(ValueError, match="unknown engine"):
        count_homs(complete_graph(3), Pattern(cycle_graph(3)), "fast")


def test_count_homs_c5_dtd_equals_brute_on_gnp30():
    p = Pattern(cycle_graph(5))
    g = gnp_graph(30, 0.2, seed=99)
    dtd, _ = count_homs(g, p, "dtd")
    brute, _ = count_homs(g, p, "brute")
    assert dtd == brute


def test_count_homs_parallel_workers_agree():
    p = Pattern(cycle_graph(5))
    g = gnp_graph(25, 0.25, seed=123)
    sequential, _ = count_homs(g, p, "dtd", workers=1)
    parallel, _ = count_homs(g, p, "dtd", workers=3)
    assert sequential == parallel


@pytest.mark.parametrize("seed", range(10))
def test_engine_agreement_random(seed):
    p = random_connected_pattern(5, seed + 500)
    if p.licl >= 6:
        pytest.skip("hard pattern drawn")
    g = gnp_graph(12 + seed, 0.3, seed=seed + 600)
    dtd, _ = count_homs(g, p, "dtd")
    brute, _ = count_homs(g, p, "brute")
    assert dtd == brute


@pytest.mark.parametrize("seed", range(6))
def test_orientation_sum_identity(seed):
    # directed counts over all acyclic orientations partition the undirected homs
    p = random_connected_pattern(5, seed + 700)
    g = gnp_graph(10, 0.35, seed=seed + 800)
    gdir = degeneracy_oriented(g)
    total = sum(
        directed_hom_count(h.out_neighbors, gdir.out_neighbors)
        for h in p.orientations
    )
    assert total == count_homs_brute(g, p)


# ---------------------------------------------------------------------------
# partitioned counting


def test_partitioned_homs_edge_on_path():
    # path a-b-c, parts {a,c} and {b}: the homs hitting both parts are the
    # two edges in their two directions
    g = path_graph(3)
    p = Pattern(Graph.from_edges(2, [(0, 1)]))
    part = VertexPartition(3, (frozenset({0, 2}), frozenset({1})))
    assert count_partitioned_homs(g, p, part) == 4
    assert count_partitioned_matches(g, p, part) == 2


def test_partitioned_homs_unreachable_part():
    # a part the pattern cannot reach forces zero
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2)])  # triangle + isolate 3
    p = Pattern(cycle_graph(3))
    part = VertexPartition(4, (frozenset({0}), frozenset({1}), frozenset({2, 3})))
    assert count_partitioned_homs(g, p, part) == 3 * 2  # aut(C3) = 6 embeddings
    island = VertexPartition(4, (frozenset({0, 1}), frozenset({2}), frozenset({3})))
    assert count_partitioned_homs(g, p, island) == 0


def test_partitioned_homs_empty_part_gives_zero():
    g = cycle_graph(3)
    p = Pattern(cycle_graph(3))
    part = VertexPartition(3, (frozenset({0, 1, 2}), frozenset(), frozenset()))
    assert count_partitioned_homs(g, p, part) == 0


def test_partitioned_never_exceeds_total():
    p = Pattern(cycle_graph(4))
    g = gnp_graph(8, 0.5, seed=31)
    part = VertexPartition(
        8, tuple(frozenset({2 * i, 2 * i + 1}) for i in range(4))
    )
    total, _ = count_homs(g, p)
    assert 0 <= count_partitioned_homs(g, p, part) <= total


def test_partition_validation():
    with pytest.raises(ValueError, match="disjoint"):
        VertexPartition(3, (frozenset({0, 1}), frozenset({1, 2})))
    with pytest.raises(ValueError, match="cover"):
        VertexPartition(3, (frozenset({0}), frozenset({1})))
    part = VertexPartition(3, (frozenset({0, 1, 2}),))
    with pytest.raises(ValueError, match="parts"):
        count_partitioned_homs(cycle_graph(3), Pattern(cycle_graph(3)), part)
    with pytest.raises(ValueError, match="vertex set"):
        count_partitioned_homs(
            cycle_graph(4),
            Pattern(cycle_graph(3)),
            VertexPartition(3, tuple(frozenset({i}) for i in range(3))),
        )


def test_exact_division_guard():
    with pytest.raises(CountConsistencyError):
        _exact_div(5, 2, "test quantity")
    assert _exact_div(6, 2, "test quantity") == 3
