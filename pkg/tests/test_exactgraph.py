import itertools

import numpy as np
import pytest

from oracles import brute_alpha, brute_graph, brute_neighborhood_edges, dist
from permgv.bounds import CodeParameters, e_upper_bound, gv_lower, sphere_packing_upper, true_max_degree
from permgv.exactgraph import (
    GraphTooLargeError,
    adjacency_bytes,
    build_graph,
    check_transitivity_sample,
    exact_alpha,
    heuristic_alpha,
    neighborhood_stats,
    vertex_neighborhood_edges,
)

P = CodeParameters


def all_pairs_ok(words, d):
    return all(dist(a, b) >= d for a, b in itertools.combinations(words, 2))


def test_graph_matches_brute_force():
    for n in range(2, 6):
        for d in range(2, n + 1):
            graph = build_graph(P(n, d))
            _, adj = brute_graph(n, d)
            for v in range(graph.vertex_count):
                assert set(graph.neighbors(v).tolist()) == adj[v]


def test_graph_examples():
    g33 = build_graph(P(3, 3))
    assert g33.vertex_count == 6 and g33.degree(0) == 3
    assert sorted(g33.vertex(v) for v in g33.neighbors(0)) == [(0, 2, 1), (1, 0, 2), (2, 1, 0)]
    g42 = build_graph(P(4, 2))
    assert g42.degrees().max() == 0
    g53 = build_graph(P(5, 3))
    assert set(g53.degrees().tolist()) == {10}


def test_symmetric_no_loops():
    graph = build_graph(P(5, 4))
    bits = np.unpackbits(graph.adjacency.view(np.uint8), axis=1, bitorder="little")[:, :120]
    assert np.array_equal(bits, bits.T)
    assert not bits.diagonal().any()
    assert graph.adjacent(0, int(graph.neighbors(0)[0]))
    assert not graph.adjacent(0, 0)


def test_regular_degree_up_to_7():
    for n in range(2, 8):
        for d in range(2, n + 1):
            degs = build_graph(P(n, d)).degrees()
            assert (degs == true_max_degree(P(n, d))).all()


def test_cap():
    with pytest.raises(GraphTooLargeError, match="MB"):
        build_graph(P(8, 3))
    with pytest.raises(GraphTooLargeError):
        build_graph(P(9, 3), allow_large=True)
    assert adjacency_bytes(7) == 5040 * 79 * 8


def test_neighborhood_stats_examples():
    assert neighborhood_stats(build_graph(P(4, 2))) == (
        neighborhood_stats(build_graph(P(4, 2))).__class__(0, 0, 0)
    )
    s43 = neighborhood_stats(build_graph(P(4, 3)))
    assert s43.degree == 6
    assert s43.neighborhood_edges == brute_neighborhood_edges(4, 3)


def test_neighborhood_edges_and_triangles():
    for n in range(2, 7):
        for d in range(2, n + 1):
            graph = build_graph(P(n, d))
            st = neighborhood_stats(graph)
            assert st.neighborhood_edges == brute_neighborhood_edges(n, d)
            assert 3 * st.triangles_total == graph.vertex_count * st.neighborhood_edges
            assert st.neighborhood_edges <= e_upper_bound(P(n, d))


def test_triangle_identity_by_global_count():
    # count triangles directly on a small graph
    n, d = 5, 4
    graph = build_graph(P(n, d))
    rows = graph.rows
    tri = 0
    for u in range(graph.vertex_count):
        for v in graph.neighbors(u):
            if v <= u:
                continue
            common = rows[u] & rows[int(v)]
            tri += bin(common >> (int(v) + 1)).count("1")
    assert tri == neighborhood_stats(graph).triangles_total


def test_transitivity_sample():
    graph = build_graph(P(6, 4))
    assert check_transitivity_sample(graph, samples=10, seed=1)
    e0 = vertex_neighborhood_edges(graph, 0)
    assert all(vertex_neighborhood_edges(graph, v) == e0 for v in (1, 77, 719))


@pytest.mark.parametrize("n, d, expected", [(4, 2, 24), (4, 3, 12), (4, 4, 4), (3, 3, 3), (5, 5, 5)])
def test_exact_alpha_examples(n, d, expected):
    size, witness = exact_alpha(build_graph(P(n, d)))
    assert size == expected == len(witness) == len(set(witness))
    assert all_pairs_ok(witness, d)


def test_exact_alpha_matches_plain_search():
    for n in range(2, 5):
        for d in range(2, n + 1):
            assert exact_alpha(build_graph(P(n, d)))[0] == brute_alpha(n, d)


def test_exact_alpha_latin_square_witness():
    for n in range(2, 6):
        size, witness = exact_alpha(build_graph(P(n, n)))
        assert size == n
        assert all(dist(a, b) == n for a, b in itertools.combinations(witness, 2))


def test_exact_alpha_sandwich_n5():
    for d in range(2, 6):
        p = P(5, d)
        size, witness = exact_alpha(build_graph(p))
        assert gv_lower(p) <= size <= sphere_packing_upper(p)
        assert all_pairs_ok(witness, d)


def test_exact_alpha_size_cap():
    graph = build_graph(P(6, 4))
    with pytest.raises(GraphTooLargeError):
        exact_alpha(graph)
    assert exact_alpha(graph, long_run=True)[0] == 120


def test_exact_alpha_rejects_n7():
    with pytest.raises(GraphTooLargeError):
        exact_alpha(build_graph(P(7, 7)), long_run=True)


@pytest.mark.parametrize("strategy", ["greedy-lex", "random-greedy", "best-of-k"])
def test_heuristics(strategy):
    empty = build_graph(P(4, 2))
    assert heuristic_alpha(empty, strategy, seed=3, k=2)[0] == 24
    graph = build_graph(P(5, 3))
    size, witness = heuristic_alpha(graph, strategy, seed=5, k=4)
    assert size >= gv_lower(P(5, 3)) == 11
    assert all_pairs_ok(witness, 3)
    assert heuristic_alpha(graph, strategy, seed=5, k=4) == (size, witness)


def test_best_of_k_dominates_its_seeds():
    graph = build_graph(P(6, 4))
    best = heuristic_alpha(graph, "best-of-k", seed=10, k=5)[0]
    singles = [heuristic_alpha(graph, "random-greedy", seed=10 + i)[0] for i in range(5)]
    assert best == max(singles)


def test_heuristic_bad_strategy():
    with pytest.raises(ValueError):
        heuristic_alpha(build_graph(P(3, 3)), "annealing")
