from fractions import Fraction
from itertools import combinations

import pytest

from dmpath.extremal import (
    CLOSED_FORM,
    EXHAUSTIVE_LABELED,
    GRAPH6_STREAM,
    SEQUENCE_ENUMERATION,
    ExtremalError,
    audit_f_bounds,
    conjecture_scan,
    distinct_part_sequences,
    f_number,
    g_number,
    g_value,
    gap_bound,
    gap_sweep,
    gap_threshold,
    turan_bound,
    turan_number,
    turan_record,
    witness_mp_ok,
)
from dmpath.graph import CapacityError, graph6_decode, graph6_encode, complete_multipartite, labeled_graphs
from dmpath.solver import mp_exact

from oracles import brute_clique, naive_mp


def brute_g(n, k):
    best = None
    for seq in combinations(range(1, n + 1), k - 1):
        if sum(seq) == n:
            val = sum(a * b for a, b in combinations(seq, 2))
            best = val if best is None else max(best, val)
    return best


def brute_f(n, k):
    return max(g.num_edges for g in labeled_graphs(n) if naive_mp(n, g.edges()) < k)


def brute_t(n, k):
    return max(g.num_edges for g in labeled_graphs(n) if brute_clique(n, g.edges()) < k)


@pytest.mark.parametrize("n,k,t", [(6, 3, 9), (9, 4, 27), (7, 4, 16), (5, 2, 0), (0, 3, 0), (10, 3, 25)])
def test_turan_values(n, k, t):
    assert turan_number(n, k) == t
    assert t <= turan_bound(n, k)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("k", [2, 3, 4])
def test_turan_matches_brute_force(n, k):
    assert turan_number(n, k) == brute_t(n, k)


def test_turan_needs_k_at_least_two():
    with pytest.raises(ExtremalError):
        turan_number(5, 1)


def test_turan_record_witness():
    rec = turan_record(9, 4, witness=True)
    assert rec.provenance == CLOSED_FORM
    assert graph6_decode(rec.witnesses[0]).num_edges == 27
    assert rec.to_json()["bound"] == "27"


@pytest.mark.parametrize("n,k,g,parts", [
    (7, 4, 14, [(1, 2, 4)]),
    (10, 4, 31, [(2, 3, 5)]),
    (9, 4, 26, [(2, 3, 4)]),
    (6, 4, 11, [(1, 2, 3)]),
    (5, 3, 6, [(2, 3)]),
    (6, 3, 8, [(2, 4)]),
])
def test_g_values(n, k, g, parts):
    rec = g_number(n, k)
    assert rec.value == g
    assert rec.parts == parts
    assert rec.provenance == SEQUENCE_ENUMERATION
    assert witness_mp_ok(rec)
    w = graph6_decode(rec.witnesses[0])
    assert w.num_edges == g
    assert mp_exact(w).value == k - 1


@pytest.mark.parametrize("k", [3, 4, 5])
def test_g_reports_every_optimal_sequence(k):
    for n in range(k * (k - 1) // 2, 22):
        rec = g_number(n, k, witness=False)
        optimal = [
            seq for seq in combinations(range(1, n + 1), k - 1)
            if sum(seq) == n and sum(a * b for a, b in combinations(seq, 2)) == rec.value
        ]
        assert rec.parts == optimal


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_g_matches_brute_force(k):
    for n in range(k * (k - 1) // 2, 26):
        assert g_value(n, k) == brute_g(n, k)


def test_g_too_small():
    with pytest.raises(ExtremalError):
        g_value(5, 4)
    with pytest.raises(ExtremalError):
        g_value(5, 2)


def test_distinct_part_sequences():
    assert list(distinct_part_sequences(10, 3)) == [(1, 2, 7), (1, 3, 6), (1, 4, 5), (2, 3, 5)]


def test_g_scales_to_large_n():
    assert g_value(200, 5) == 14995


@pytest.mark.parametrize("n,k,f", [(4, 3, 3), (5, 3, 6), (6, 3, 8), (6, 4, 11)])
def test_f_values(n, k, f):
    rec = f_number(n, k)
    assert rec.value == f
    assert rec.provenance == EXHAUSTIVE_LABELED
    assert witness_mp_ok(rec)
    assert all(graph6_decode(w).num_edges == f for w in rec.witnesses)


def test_f_six_three_witnesses_are_k42():
    rec = f_number(6, 3)
    target = sorted(complete_multipartite([4, 2]).degrees)
    assert len(rec.witnesses) == 15  # labelings of K_{4,2}
    for text in rec.witnesses:
        g = graph6_decode(text)
        assert sorted(g.degrees) == target and g.num_edges == 8


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_f_matches_brute_force(n, k):
    assert f_number(n, k).value == brute_f(n, k)


def test_f_parallel_matches_serial():
    a = f_number(6, 4)
    b = f_number(6, 4, workers=2)
    assert a.value == b.value and a.witnesses == b.witnesses


def test_f_cap():
    with pytest.raises(CapacityError):
        f_number(8, 3)


def test_f_from_stream():
    # all labeled graphs on 5 vertices cover every isomorphism class
    lines = [graph6_encode(g) + "\n" for g in labeled_graphs(5)]
    rec = f_number(5, 3, source="stream", stream=lines, stream_name="all5")
    assert rec.value == 6
    assert rec.provenance == GRAPH6_STREAM
    assert rec.to_json()["stream"] == "all5"


def test_f_stream_errors():
    with pytest.raises(ExtremalError):
        f_number(5, 3, source="stream", stream=[])
    with pytest.raises(ExtremalError):
        f_number(5, 3, source="stream", stream=["Bw\n"])
    with pytest.raises(ExtremalError):
        f_number(5, 3, source="stream")


def test_f_nondecreasing_in_k():
    for n in range(2, 7):
        vals = [f_number(n, k).value for k in range(2, n + 2)]
        assert vals == sorted(vals)
        assert vals[-1] == n * (n - 1) // 2


@pytest.mark.parametrize("n,k", [(6, 4), (6, 3), (5, 4), (6, 5)])
def test_audit_f_bounds(n, k):
    audit = audit_f_bounds(n, k)
    assert audit.ok


def test_audit_six_four_pins_f():
    audit = audit_f_bounds(6, 4)
    assert audit.g == 11 and audit.t == 12 and audit.f == 11
    assert "f<=t-1" in audit.checks


@pytest.mark.parametrize("k,value", [(3, Fraction(45, 24)), (4, Fraction(87, 24)), (5, Fraction(153, 24))])
def test_gap_bound(k, value):
    assert gap_bound(k) == value


def test_gap_bound_needs_k_three():
    with pytest.raises(ExtremalError):
        gap_bound(2)


def test_gap_threshold():
    assert gap_threshold(3) == 5
    assert gap_threshold(4) == 9
    assert gap_threshold(5) == 14


@pytest.mark.parametrize("k", [3, 4, 5])
def test_gap_sweep(k):
    rows = gap_sweep(k, 40)
    assert rows[0].n == gap_threshold(k)
    assert all(r.ok for r in rows)


def test_gap_spot_value():
    row = next(r for r in gap_sweep(4, 12) if r.n == 9)
    assert (row.t, row.g, row.gap) == (27, 26, 1)


def test_conjecture_scan_rows():
    rows = {(r.n, r.k): r for r in conjecture_scan(3, 6)}
    assert rows[(5, 3)].f == 6 and rows[(5, 3)].g == 6 and rows[(5, 3)].equal
    assert rows[(6, 3)].f == 8 and rows[(6, 3)].equal
    assert rows[(2, 3)].g is None and rows[(2, 3)].equal is None
