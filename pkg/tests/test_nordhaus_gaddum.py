import pytest

from dmpath.census import census
from dmpath.constructions import ValidationFailed
from dmpath.graph import Graph, complement, cycle_graph, disjoint_cliques, labeled_graphs
from dmpath.nordhaus_gaddum import (
    chi_sum,
    gen_ng_cliques,
    gen_ng_upper,
    ng_clique_sizes,
    ng_cliques_cert,
    ng_exhaustive_audit,
    ng_sum,
    ng_upper_cert,
    sum_lower_bound,
)

from oracles import naive_mp


@pytest.mark.parametrize("n,bound", [(1, 2), (2, 3), (4, 4), (5, 5), (7, 6), (9, 6), (16, 8)])
def test_sum_lower_bound(n, bound):
    assert sum_lower_bound(n) == bound
    assert bound * bound >= 4 * n > (bound - 1) ** 2


def test_ng_sum_cycle():
    rec = ng_sum(cycle_graph(5))
    assert (rec.mp_g, rec.mp_gbar, rec.total) == (5, 5, 10)
    assert rec.within_bounds
    assert rec.to_json()["sum"] == 10


@pytest.mark.parametrize("n", range(5, 13))
def test_upper_construction(n):
    c, rest = gen_ng_upper(n)
    assert complement(c) == rest
    assert ng_sum(c).total == 2 * n


def test_upper_needs_five():
    with pytest.raises(ValueError):
        gen_ng_upper(4)


def test_upper_cert():
    cert = ng_upper_cert(6)
    assert cert.claims == {"mp": 6, "mp_complement": 6}


@pytest.mark.parametrize("n,sizes", [
    (16, [2, 3, 5, 6]),
    (36, [3, 4, 5, 7, 8, 9]),
    (9, [2, 3, 4]),
    (25, [3, 4, 5, 6, 7]),
])
def test_clique_sizes(n, sizes):
    assert ng_clique_sizes(n) == sizes


def test_clique_sizes_need_square():
    with pytest.raises(ValueError):
        ng_clique_sizes(15)


@pytest.mark.parametrize("n,total", [(16, 10), (25, 12), (36, 15)])
def test_clique_construction(n, total):
    g = gen_ng_cliques(n)
    rec = ng_sum(g)
    assert rec.total == total
    assert ng_cliques_cert(n).claims["sum"] == total


def test_sixteen_cliques_parts():
    rec = ng_sum(disjoint_cliques([2, 3, 5, 6]))
    assert (rec.mp_g, rec.mp_gbar) == (6, 4)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_audit_matches_naive(n):
    lo = hi = None
    for g in labeled_graphs(n):
        s = naive_mp(n, g.edges()) + naive_mp(n, complement(g).edges())
        lo = s if lo is None else min(lo, s)
        hi = s if hi is None else max(hi, s)
    row = ng_exhaustive_audit(n)[-1]
    assert (row.min_sum, row.max_sum) == (lo, hi)
    assert not row.violations
    assert row.graphs == 1 << (n * (n - 1) // 2)
    assert sum(row.distribution.values()) == row.graphs


def test_audit_sampled_beyond_cap():
    rows = ng_exhaustive_audit(8, samples=50, seed=1, n_min=8)
    assert rows[-1].sampled and rows[-1].graphs == 50
    assert not rows[-1].violations
    again = ng_exhaustive_audit(8, samples=50, seed=1, n_min=8)
    assert again[-1].to_json() == rows[-1].to_json()


def test_chi_gap_nonnegative():
    row = ng_exhaustive_audit(5)[-1]
    assert row.min_chi_gap >= 0


def test_chi_sum():
    assert chi_sum(cycle_graph(5)) == 6


def test_census_parallel_matches_serial():
    from dmpath.census import compute_census

    a = compute_census(6, ("mp", "chi"), workers=1)
    b = compute_census(6, ("mp", "chi"), workers=2)
    assert a.tables == b.tables


def test_census_alpha():
    table = census(4)
    full = table.full
    assert table.alpha(0) == 4
    assert table.alpha(full) == 1
