import io
import itertools
import math

import numpy as np
import pytest

from cliquetop.graphs import (
    Graph,
    bit_indices,
    common_neighbor_all,
    common_neighborhood,
    connected_components,
    generate_gnp,
    induced_subgraph,
    k_core,
    link_intersection_connected,
    pack_indices,
    read_edge_list,
    vertex_link_subgraph,
    write_edge_list,
)
from cliquetop.rng import RandomSource


def edge_set(g):
    return set(g.edges())


# -- construction and bit plumbing ---------------------------------------

def test_bit_roundtrip():
    row = pack_indices(200, [0, 63, 64, 127, 199])
    assert list(bit_indices(row)) == [0, 63, 64, 127, 199]


def test_from_edges_symmetry():
    g = Graph.from_edges(5, [(0, 1), (3, 4), (1, 3)])
    assert g.adjacent(0, 1) and g.adjacent(1, 0)
    assert g.adjacent(3, 4) and not g.adjacent(0, 4)
    assert g.edge_count() == 3
    assert list(g.neighbors(1)) == [0, 3]


def test_from_edges_rejects_loops_and_range():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_complete_and_cycle():
    k5 = Graph.complete(5)
    assert k5.edge_count() == 10
    assert all(k5.degree(v) == 4 for v in range(5))
    c6 = Graph.cycle(6)
    assert c6.edge_count() == 6
    assert all(c6.degree(v) == 2 for v in range(6))


def test_edges_colex_order():
    g = Graph.complete(5)
    es = list(g.edges())
    ranks = [v * (v - 1) // 2 + u for u, v in es]
    assert ranks == sorted(ranks)
    assert len(es) == 10


# -- G(n,p) ---------------------------------------------------------------

def test_gnp_extremes():
    rng = RandomSource(1)
    assert generate_gnp(8, 0.0, rng).edge_count() == 0
    assert generate_gnp(8, 1.0, rng) == Graph.complete(8)
    assert generate_gnp(0, 0.5, rng).n == 0
    assert generate_gnp(1, 0.5, rng).edge_count() == 0


def test_gnp_rejects_bad_p():
    with pytest.raises(ValueError):
        generate_gnp(5, 1.5, RandomSource(1))
    with pytest.raises(ValueError):
        generate_gnp(5, -0.1, RandomSource(1))


def test_gnp_deterministic():
    a = generate_gnp(60, 0.3, RandomSource(77, stream_id=4))
    b = generate_gnp(60, 0.3, RandomSource(77, stream_id=4))
    assert a == b
    c = generate_gnp(60, 0.3, RandomSource(78, stream_id=4))
    assert a != c


def test_gnp_monotone_coupling():
    # same seed: the p=0.25 edge set is nested inside the p=0.6 edge set
    rng = RandomSource(202)
    lo = generate_gnp(40, 0.25, rng)
    hi = generate_gnp(40, 0.6, rng)
    assert edge_set(lo) <= edge_set(hi)
    assert np.all((lo.rows & hi.rows) == lo.rows)


def test_gnp_block_boundary_consistent():
    # per-pair draws must not depend on batch layout: check a direct
    # per-counter recomputation of a few columns
    rng = RandomSource(9, stream_id=1)
    g = generate_gnp(50, 0.5, rng)
    for v in [1, 17, 49]:
        for u in range(v):
            rank = v * (v - 1) // 2 + u
            assert g.adjacent(u, v) == (rng.uniform_at(rank) < 0.5)


def test_gnp_edge_count_moments():
    # n=2000, p=0.01: E[m] = 19990, sd = sqrt(m p (1-p)) ~ 140.68;
    # over 100 seeds the mean should sit within 3 sd of the mean.
    n, p, reps = 2000, 0.01, 100
    pairs = n * (n - 1) // 2
    expect = pairs * p
    sd_mean = math.sqrt(pairs * p * (1 - p) / reps)
    counts = [generate_gnp(n, p, RandomSource(s)).edge_count() for s in range(reps)]
    assert abs(np.mean(counts) - expect) < 3 * sd_mean


# -- neighbourhood checkers ----------------------------------------------

def test_common_neighbor_all_examples():
    ok, wit = common_neighbor_all(Graph.complete(4), 2)
    assert ok and wit is None
    ok, wit = common_neighbor_all(Graph.path(3), 2)
    assert not ok and wit == (0, 1)
    ok, _ = common_neighbor_all(Graph.cycle(4), 1)
    assert ok
    ok, wit = common_neighbor_all(Graph.cycle(4), 2)
    assert not ok and wit == (0, 1)


def test_common_neighbor_all_bounds():
    with pytest.raises(ValueError):
        common_neighbor_all(Graph.complete(3), 0)
    with pytest.raises(ValueError):
        common_neighbor_all(Graph.complete(3), 4)


def naive_common_neighbor_all(g, l):
    for sub in itertools.combinations(range(g.n), l):
        outside = set(range(g.n)) - set(sub)
        if not any(all(g.adjacent(w, v) for v in sub) for w in outside):
            return False, sub
    return True, None


def test_common_neighbor_all_matches_naive():
    for seed in range(12):
        g = generate_gnp(12, 0.5 + 0.04 * (seed % 5), RandomSource(seed))
        for l in (1, 2, 3):
            assert common_neighbor_all(g, l) == naive_common_neighbor_all(g, l)


def test_common_neighbor_monotone_in_l():
    for seed in range(6):
        g = generate_gnp(14, 0.7, RandomSource(seed + 50))
        flags = [common_neighbor_all(g, l)[0] for l in (1, 2, 3, 4)]
        # once it fails for some l it must fail for every larger l
        for a, b in zip(flags, flags[1:]):
            assert a or not b


def test_common_neighborhood_examples():
    k5 = Graph.complete(5)
    assert list(common_neighborhood(k5, [0, 1])) == [2, 3, 4]
    c4 = Graph.cycle(4)
    assert list(common_neighborhood(c4, [0, 2])) == [1, 3]
    assert list(common_neighborhood(Graph.path(3), [0, 2])) == [1]
    assert list(common_neighborhood(k5, [])) == [0, 1, 2, 3, 4]


def test_link_intersection_connected_examples():
    assert link_intersection_connected(Graph.complete(5), [0, 1])
    assert not link_intersection_connected(Graph.cycle(4), [0, 2])
    # K4 minus the edge {0,1}: common neighbourhood of {2,3} is {0,1}, no edge
    g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert not link_intersection_connected(g, [2, 3])
    # empty common neighbourhood
    assert not link_intersection_connected(Graph.path(4), [0, 3])


# -- cores, components, induced subgraphs --------------------------------

def naive_core(g, d):
    alive = set(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            if sum(1 for u in alive if u != v and g.adjacent(u, v)) < d:
                alive.discard(v)
                changed = True
    return sorted(alive)


def test_k_core_examples():
    c4 = Graph.cycle(4)
    core, ids = k_core(c4, 2)
    assert list(ids) == [0, 1, 2, 3] and core == c4
    # a tree has empty 2-core
    tree = Graph.from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    core, ids = k_core(tree, 2)
    assert ids.size == 0 and core.n == 0
    # K5 with a pendant vertex: 4-core is the K5
    g = Graph.from_edges(6, [(u, v) for u, v in itertools.combinations(range(5), 2)] + [(4, 5)])
    core, ids = k_core(g, 4)
    assert list(ids) == [0, 1, 2, 3, 4] and core == Graph.complete(5)


def test_k_core_matches_naive():
    for seed in range(10):
        g = generate_gnp(15, 0.3, RandomSource(seed + 7))
        for d in (1, 2, 3):
            _, ids = k_core(g, d)
            assert list(ids) == naive_core(g, d)


def test_connected_components():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (4, 5)])
    count, labels = connected_components(g)
    assert count == 3
    assert labels[0] == labels[1] == labels[2]
    assert labels[4] == labels[5] != labels[3]
    assert connected_components(Graph.complete(4))[0] == 1
    assert connected_components(Graph.empty(3))[0] == 3


def test_induced_subgraph():
    g = Graph.cycle(5)
    sub, ids = induced_subgraph(g, [0, 1, 3])
    assert list(ids) == [0, 1, 3]
    assert sub.n == 3 and sub.edge_count() == 1 and sub.adjacent(0, 1)
    for seed in range(6):
        h = generate_gnp(20, 0.4, RandomSource(seed + 30))
        keep = [v for v in range(20) if v % 3 != 0]
        sub, ids = induced_subgraph(h, keep)
        for i, a in enumerate(ids):
            for j, b in enumerate(ids):
                if i != j:
                    assert sub.adjacent(i, j) == h.adjacent(int(a), int(b))


def test_vertex_link_subgraph():
    link, ids = vertex_link_subgraph(Graph.complete(5), 0)
    assert link == Graph.complete(4) and list(ids) == [1, 2, 3, 4]
    link, ids = vertex_link_subgraph(Graph.cycle(4), 0)
    assert link.edge_count() == 0 and list(ids) == [1, 3]


# -- edge list io --------------------------------------------------------

def test_edge_list_roundtrip(tmp_path):
    g = generate_gnp(25, 0.3, RandomSource(5))
    path = tmp_path / "g.edges"
    write_edge_list(g, path)
    assert read_edge_list(path) == g
    lines = path.read_text().splitlines()
    assert lines[0] == f"25 {g.edge_count()}"
    assert len(lines) == 1 + g.edge_count()


def test_edge_list_comments_and_errors():
    text = "# sample\n4 2\n0 1\n\n2 3  # chord\n"
    assert read_edge_list(io.StringIO(text)) == Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        read_edge_list(io.StringIO("4 1\n1 0\n"))  # u >= v
    with pytest.raises(ValueError):
        read_edge_list(io.StringIO("4 2\n0 1\n"))  # count mismatch
    with pytest.raises(ValueError):
        read_edge_list(io.StringIO("# empty\n"))


def test_edge_list_writer_colex(tmp_path):
    g = Graph.from_edges(5, [(0, 4), (1, 2), (0, 1), (3, 4)])
    buf = io.StringIO()
    write_edge_list(g, buf)
    body = [tuple(map(int, ln.split())) for ln in buf.getvalue().splitlines()[1:]]
    ranks = [v * (v - 1) // 2 + u for u, v in body]
    assert ranks == sorted(ranks)
