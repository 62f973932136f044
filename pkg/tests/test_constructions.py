import json

import pytest

from dmpath.constructions import (
    FAMILIES,
    ConstructionCert,
    ConstructionError,
    NotMaximalOuterplanar,
    RotationError,
    check_light_edge,
    construct,
    gen_fan,
    gen_maxplanar_1,
    gen_maxplanar_2,
    gen_mop_a,
    gen_mop_b_irregular,
    gen_multipartite_distinct,
    gen_turan,
    is_mop,
    mop_triangulations,
    random_mop,
    rotation_from_faces,
    trace_faces,
    turan_part_sizes,
    validate_maxplanar,
    validate_mop,
    verify_claims,
)
from dmpath.graph import Graph, complete_graph, cycle_graph, graph6_decode
from dmpath.solver import chromatic_number, mp_exact, regular_edges

from oracles import catalan, is_outerplanar_nx, naive_mp, to_nx

import networkx as nx


@pytest.mark.parametrize("n", range(4, 13))
def test_fan_attains_n_minus_one(n):
    cert = gen_fan(n)
    assert cert.graph.n == n
    assert mp_exact(cert.graph).value == n - 1
    assert is_mop(cert.graph)


@pytest.mark.parametrize("r,n", [(5, 6), (6, 8), (7, 9), (8, 10), (9, 12), (12, 16)])
def test_mop_a_sizes_and_mp(r, n):
    g = gen_mop_a(r).graph
    assert g.n == n
    assert g.num_edges == 2 * n - 3
    assert naive_mp(g.n, g.edges()) == 4


@pytest.mark.parametrize("r,n", [(7, 10), (8, 12), (9, 13), (10, 14), (11, 16), (12, 18)])
def test_mop_b_irregular_sizes(r, n):
    cert = gen_mop_b_irregular(r)
    g = cert.graph
    assert g.n == n
    assert regular_edges(g) == []
    assert mp_exact(g).value == 4
    assert mp_exact(g, strict=True).value == 4
    assert is_outerplanar_nx(g)


def test_mop_a_orders_avoid_three_mod_four():
    orders = [gen_mop_a(r).graph.n for r in range(5, 30)]
    assert all(n % 4 != 3 for n in orders)
    assert orders[:6] == [6, 8, 9, 10, 12, 13]


def test_mop_generators_reject_small_parameters():
    with pytest.raises(ConstructionError):
        gen_mop_a(4)
    with pytest.raises(ConstructionError):
        gen_mop_b_irregular(6)
    with pytest.raises(ConstructionError):
        gen_fan(3)


@pytest.mark.parametrize("n", range(3, 10))
def test_triangulation_count_is_catalan(n):
    gs = list(mop_triangulations(n))
    assert len(gs) == catalan(n - 2)
    assert len(set(gs)) == len(gs)
    for g in gs:
        assert is_mop(g)


def test_validate_mop_certificate():
    cert = validate_mop(gen_fan(6).graph)
    assert sorted(cert.hamiltonian_cycle) == list(range(6))
    assert len(cert.chords) == 3


@pytest.mark.parametrize("g,condition", [
    (Graph.from_edges(2, [(0, 1)]), "order"),
    (cycle_graph(5), "edge-count"),
    (Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]), "no-outerplanar-cycle"),
    (Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 4)]), "no-outerplanar-cycle"),
])
def test_validate_mop_failures(g, condition):
    with pytest.raises(NotMaximalOuterplanar) as info:
        validate_mop(g)
    assert info.value.condition == condition


def test_validate_mop_disconnected():
    # K5 plus a separate edge has 11 = 2*7 - 3 edges
    edges = [(i, j) for i in range(5) for j in range(i + 1, 5)] + [(5, 6)]
    with pytest.raises(NotMaximalOuterplanar) as info:
        validate_mop(Graph.from_edges(7, edges))
    assert info.value.condition == "connectivity"


def test_is_mop_agrees_with_planarity_oracle():
    for n in range(4, 7):
        for g in mop_triangulations(n):
            assert is_outerplanar_nx(g)
    # K4 minus an edge is a MOP, K4 itself has one edge too many
    assert is_mop(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]))
    assert not is_mop(complete_graph(4))


@pytest.mark.parametrize("seed", range(20))
def test_random_mop_is_mop(seed):
    g = random_mop(12, seed)
    assert g.n == 12 and is_mop(g)
    assert is_outerplanar_nx(g)
    assert check_light_edge(g)


def test_random_mop_deterministic():
    assert random_mop(10, 4) == random_mop(10, 4)


def test_light_edge_detects_absence():
    # a cycle has degree-2 edges so the light edge exists
    assert check_light_edge(cycle_graph(5))
    assert not check_light_edge(complete_graph(5))


@pytest.mark.parametrize("r,n", [(7, 10), (10, 14), (13, 18)])
def test_maxplanar_1(r, n):
    cert = gen_maxplanar_1(r)
    g = cert.graph
    assert g.n == n and g.num_edges == 3 * n - 6
    assert validate_maxplanar(g, cert.embedding)
    assert mp_exact(g).value == 4
    assert chromatic_number(g) == 4
    assert nx.check_planarity(to_nx(g))[0]


@pytest.mark.parametrize("k,n", [(3, 13), (4, 16), (5, 19)])
def test_maxplanar_2(k, n):
    cert = gen_maxplanar_2(k)
    g = cert.graph
    assert g.n == n and g.num_edges == 3 * n - 6
    assert validate_maxplanar(g, cert.embedding)
    assert mp_exact(g).value == 4
    assert chromatic_number(g) == 4
    assert nx.check_planarity(to_nx(g))[0]


def test_maxplanar_2_without_closing_edge_is_not_a_triangulation():
    g = gen_maxplanar_2(3).graph
    k = 3
    v1, yk = 3 * k + 1, k
    edges = [e for e in g.edges() if e != (yk, v1)]
    h = Graph.from_edges(g.n, edges)
    assert h.num_edges == 3 * h.n - 7
    assert mp_exact(h).value == 5


def test_maxplanar_parameters():
    with pytest.raises(ConstructionError):
        gen_maxplanar_1(8)
    with pytest.raises(ConstructionError):
        gen_maxplanar_2(2)


def test_rotation_from_faces_tetrahedron():
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    rot = rotation_from_faces(4, faces)
    g = complete_graph(4)
    assert len(trace_faces(g, rot)) == 4
    assert validate_maxplanar(g, rot)


def test_rotation_errors():
    with pytest.raises(RotationError):
        rotation_from_faces(3, [(0, 1, 2), (0, 1, 2)])
    with pytest.raises(RotationError):
        rotation_from_faces(3, [(0, 1, 2)])
    with pytest.raises(RotationError):
        trace_faces(complete_graph(4), ((1, 2), (0, 2, 3), (0, 1, 3), (0, 1, 2)))


def test_bad_rotation_fails_euler():
    # K4 with a non-planar cyclic order at one vertex
    g = complete_graph(4)
    good = rotation_from_faces(4, [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])
    bad = list(good)
    bad[0] = (good[0][1], good[0][0], good[0][2])
    assert not validate_maxplanar(g, bad)


@pytest.mark.parametrize("k", range(2, 7))
def test_multipartite_distinct_mp_is_part_count(k):
    parts = list(range(1, k + 1))
    cert = gen_multipartite_distinct(parts)
    assert mp_exact(cert.graph).value == k
    assert cert.claims["chi"] == k


def test_multipartite_distinct_edges():
    assert gen_multipartite_distinct([2, 3, 5]).graph.num_edges == 31
    with pytest.raises(ConstructionError):
        gen_multipartite_distinct([2, 2, 3])


def test_turan():
    assert turan_part_sizes(9, 3) == [3, 3, 3]
    assert turan_part_sizes(7, 3) == [3, 2, 2]
    cert = gen_turan(9, 4)
    assert cert.graph.num_edges == 27
    assert cert.claims["chi"] == 3


def test_verify_claims_catches_false_claim():
    cert = gen_fan(6)
    cert.claims["mp"] = 6
    with pytest.raises(ConstructionError):
        verify_claims(cert)


@pytest.mark.parametrize("family,params", [
    ("fan", {"n": "7"}),
    ("mop_a", {"r": "8"}),
    ("mop_b_irregular", {"r": "9"}),
    ("maxplanar_1", {"r": "7"}),
    ("maxplanar_2", {"k": "3"}),
    ("multipartite_distinct", {"parts": "1,2,4"}),
    ("turan", {"n": "6", "k": "3"}),
    ("ng_cliques", {"n": "16"}),
    ("ng_kn_minus_cycle", {"n": "6"}),
])
def test_construct_round_trips_through_json(family, params):
    assert family in FAMILIES
    cert = construct(family, params)
    doc = json.loads(cert.dumps())
    back = ConstructionCert.from_json(doc)
    assert back.graph == cert.graph
    assert back.embedding == cert.embedding
    verify_claims(back)
    assert graph6_decode(doc["graph6"]) == cert.graph


def test_construct_errors():
    with pytest.raises(ConstructionError):
        construct("nope", {})
    with pytest.raises(ConstructionError):
        construct("fan", {})
