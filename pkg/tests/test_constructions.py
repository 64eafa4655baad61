import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pebbling import constructions as C
from pebbling.engine import Move, PebblingError, is_executable, is_restricted, is_solvable, k_reachable
from pebbling.generators import graph_classes
from pebbling.graph import Graph, diameter, is_connected, min_degree
from pebbling.solver import optimal_pebbling_number

import oracles


def test_standard_graphs():
    assert C.complete_graph(3).edge_count == 3
    p4 = C.path_graph(4)
    assert p4.edge_count == 3 and diameter(p4) == 3
    c5 = C.cycle_graph(5)
    assert c5.edge_count == 5 and all(c5.degree(v) == 2 for v in range(5))
    assert C.star_graph(3).degree(0) == 3


@pytest.mark.parametrize("build, arg", [(C.complete_graph, 0), (C.path_graph, 0), (C.cycle_graph, 2)])
def test_standard_graph_sizes_rejected(build, arg):
    with pytest.raises(C.ConstructionError):
        build(arg)


# -- lexicographic product --------------------------------------------------------


def test_p2_times_k2_is_k4():
    prod, _ = C.lexicographic_product(C.path_graph(2), C.complete_graph(2))
    assert prod == C.complete_graph(4)


def test_p3_times_k2_edge_count():
    prod, _ = C.lexicographic_product(C.path_graph(3), C.complete_graph(2))
    assert prod.n == 6
    # three in-fiber edges plus 2 * 2 * 2 between the adjacent fibers
    assert prod.edge_count == len(oracles.lex_product_edges(3, [(0, 1), (1, 2)], 2)) == 11


@pytest.mark.parametrize("g", [C.path_graph(4), C.cycle_graph(5), Graph(3)])
def test_times_k1_is_identity(g):
    prod, _ = C.lexicographic_product(g, C.complete_graph(1))
    assert prod == g


def _small_factors(max_n):
    for n in range(1, max_n + 1):
        yield from graph_classes(n, connected=False)


def test_product_degree_identity_exhaustive():
    factors = list(_small_factors(5))
    for g in factors:
        for h in factors:
            if g.n * h.n > 25:
                continue
            prod, lab = C.lexicographic_product(g, h)
            for x in range(prod.n):
                a, b = lab.pair(x)
                assert prod.degree(x) == g.degree(a) * h.n + h.degree(b)


def test_product_matches_definition_on_small_factors():
    factors = list(_small_factors(3))
    for g in factors:
        for h in factors:
            prod, _ = C.lexicographic_product(g, h)
            assert set(prod.edges) == oracles.lex_product_edges(g.n, g.edges, h.n, h.edges)


@given(st.integers(1, 6), st.integers(1, 6))
def test_labeling_round_trip(outer, inner):
    lab = C.ProductLabeling(outer, inner)
    for x in range(outer * inner):
        assert lab.index(*lab.pair(x)) == x
    assert list(lab.fiber(outer - 1)) == list(range((outer - 1) * inner, outer * inner))


# -- H_m ------------------------------------------------------------------------


def test_h4_shape():
    h = C.h_family(4)
    w = C.h_vertex(4, "w", 0)
    assert h.n == 9 and min_degree(h) == 3 and h.degree(w) == 4
    assert h.edge_count == 14


def test_h_vertex_labels_wrap():
    assert C.h_vertex(4, "u", 1) == 0
    assert C.h_vertex(4, "v", 1) == 4
    assert C.h_vertex(4, "u", 5) == 0
    assert C.h_vertex(4, "w", 0) == 8


@pytest.mark.parametrize("m", [3, 2, 5, 0])
def test_h_family_rejects(m):
    with pytest.raises(C.ConstructionError):
        C.h_family(m)


@pytest.mark.parametrize("m", [4, 6, 8])
def test_h_family_structure(m):
    h = C.h_family(m)
    w = C.h_vertex(m, "w", 0)
    assert h.n == 2 * m + 1
    assert min_degree(h) == m - 1
    assert max(h.distances[w]) <= 2
    assert is_connected(h)
    rest = [v for v in range(h.n) if v != w]
    sub = Graph(2 * m, [(a, b) for a, b in h.edges if w not in (a, b)])
    from pebbling.graph import components

    parts = [c for c in components(sub)]
    assert parts == [rest]  # the rungs keep the two halves together
    cross = [(a, b) for a, b in sub.edges if (a < m) != (b < m)]
    assert sorted(cross) == [(C.h_vertex(m, "u", i), C.h_vertex(m, "v", i)) for i in range(2, m + 1, 2)]
    no_rungs = Graph(2 * m, [e for e in sub.edges if e not in cross])
    assert components(no_rungs) == [list(range(m)), list(range(m, 2 * m))]


# -- collapse -------------------------------------------------------------------


def test_collapse_identity():
    g = C.cycle_graph(5)
    phi = C.VertexMap(5, 5, tuple(range(5)))
    assert C.collapse(g, phi, (1, 0, 2, 0, 0)) == (g, (1, 0, 2, 0, 0))


def test_collapse_product_projection():
    g = C.path_graph(3)
    prod, lab = C.lexicographic_product(g, C.complete_graph(3))
    h, hd = C.collapse(prod, C.product_projection(lab), (1,) * 9)
    assert h == g and hd == (3, 3, 3)


def test_collapse_folded_path():
    phi = C.VertexMap(3, 2, (0, 1, 0))
    h, hd = C.collapse(C.path_graph(3), phi, (1, 0, 1))
    assert h == C.path_graph(2) and hd == (2, 0)


def test_collapse_rejects_non_surjective():
    with pytest.raises(C.ConstructionError):
        C.collapse(C.path_graph(3), C.VertexMap(3, 3, (0, 0, 1)), (0, 0, 0))


def test_parse_vertex_map():
    phi = C.parse_vertex_map("# fold\n0 0\n1 1\n2 0\n", 3)
    assert phi.image == (0, 1, 0) and phi.target_order == 2
    for bad in ("0 0\n0 1\n1 1\n2 0", "0 0\n1 1", "0 x\n1 1\n2 0", "0 0\n1 1\n5 0"):
        with pytest.raises(C.ConstructionError):
            C.parse_vertex_map(bad, 3)


def _quotient_maps(n):
    """Surjective maps onto 0..k-1 in first-occurrence normal form."""
    for image in itertools.product(range(n), repeat=n):
        k = max(image) + 1
        if k < n and len(set(image)) == k and all(image.index(j) < image.index(j + 1) for j in range(k - 1)):
            yield C.VertexMap(n, k, image)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_collapsing_never_increases_pebbling_number(n):
    for g in graph_classes(n):
        pg = optimal_pebbling_number(g).value
        for phi in _quotient_maps(n):
            h, _ = C.collapse(g, phi, (0,) * n)
            assert optimal_pebbling_number(h).value <= pg


@given(st.lists(st.integers(0, 4), min_size=4, max_size=4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_collapse_preserves_size(d, image):
    k = len(set(image))
    relabel = {x: i for i, x in enumerate(sorted(set(image)))}
    phi = C.VertexMap(4, k, tuple(relabel[x] for x in image))
    _, hd = C.collapse(C.cycle_graph(4), phi, d)
    assert sum(hd) == sum(d)


# -- reduction ------------------------------------------------------------------


def test_reduction_examples():
    g, _ = C.opn_to_ropn_reduction(C.path_graph(2))
    assert g == C.complete_graph(4)
    assert C.opn_to_ropn_reduction(C.path_graph(3))[0].n == 9
    with pytest.raises(C.ConstructionError):
        C.opn_to_ropn_reduction(Graph(2))
    with pytest.raises(C.ConstructionError):
        C.opn_to_ropn_reduction(Graph(1))


# -- product witness --------------------------------------------------------------


def test_witness_m1_is_the_distribution():
    g = C.path_graph(3)
    assert C.product_witness(g, (0, 2, 0), 1) == (0, 2, 0)


def test_witness_odd_pile_splits():
    g = C.path_graph(3)
    q = C.product_witness(g, (0, 3, 0), 2)
    lab = C.ProductLabeling(3, 2)
    assert q[lab.index(1, 0)] == 1 and q[lab.index(1, 1)] == 2
    assert sum(q) == 3


def test_witness_concentrated_branch():
    # P_3 with D = 2 on the centre, m = 1: the pile is 2m and holds everything
    g = C.star_graph(4)
    q = C.product_witness(g, (4, 0, 0, 0, 0), 2)
    assert q[:2] == (2, 2) and sum(q) == 4


def test_witness_preconditions():
    g = C.path_graph(4)
    with pytest.raises(C.ConstructionError):
        C.product_witness(g, (0, 3, 0, 0), 1)  # m < ceil(4/3)
    with pytest.raises(PebblingError):
        C.product_witness(g, (2, 0, 0, 1), 2)  # unsolvable
    with pytest.raises(PebblingError):
        C.product_witness(C.path_graph(5), (1, 0, 2, 0, 1), 2)  # not normalized


def test_witness_properties_on_small_graphs():
    from pebbling.engine import normalize_optimal

    for n in range(2, 5):
        for g in graph_classes(n):
            d = normalize_optimal(g, optimal_pebbling_number(g).witness)
            for m in range(max(1, -(-n // 3)), 3):
                q = C.product_witness(g, d, m)
                prod, lab = C.lexicographic_product(g, C.complete_graph(m))
                assert is_restricted(q, 2) and sum(q) == sum(d)
                assert [sum(q[x] for x in lab.fiber(v)) for v in range(n)] == list(d)
                assert is_solvable(prod, q)


def _run(d, moves):
    out = list(d)
    for s, t in moves:
        out[s] -= 2
        out[t] += 1
    return out


def test_lift_sequence_delivers_to_every_copy():
    g = C.path_graph(3)
    d = (0, 3, 0)
    m = 2
    q = C.product_witness(g, d, m)
    prod, lab = C.lexicographic_product(g, C.complete_graph(m))
    for target in range(3):
        ok, sigma = k_reachable(g, d, target)
        assert ok
        for copy in range(m):
            tau = C.lift_sequence(g, d, m, sigma, target, copy)
            assert is_executable(prod, q, tau)
            assert _run(q, tau)[lab.index(target, copy)] >= 1


def test_lift_sequence_concentrated():
    g = C.star_graph(4)
    d = (4, 0, 0, 0, 0)
    m = 2
    q = C.product_witness(g, d, m)
    prod, lab = C.lexicographic_product(g, C.complete_graph(m))
    tau = C.lift_sequence(g, d, m, [Move(0, 3)], 3, 1)
    assert is_executable(prod, q, tau)
    assert _run(q, tau)[lab.index(3, 1)] == 1


def test_lift_sequence_rejects_bad_sigma():
    g = C.path_graph(3)
    with pytest.raises(C.ConstructionError):
        C.lift_sequence(g, (0, 3, 0), 2, [Move(1, 0), Move(1, 2)], 0, 0)
