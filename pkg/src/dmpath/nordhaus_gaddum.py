"""mp(G) + mp(complement of G): bounds, extremal constructions, exhaustive audit."""

from __future__ import annotations

import logging
import math
import random
from collections import Counter
from dataclasses import dataclass, field

from .census import EXHAUSTIVE_CAP, census
from .constructions import ConstructionCert, ValidationFailed, check_part_sizes
from .graph import (
    Graph,
    check_capacity,
    complement,
    cycle_graph,
    disjoint_cliques,
    graph6_encode,
    rows_from_mask,
)
from .solver import chromatic_number, isqrt_ceil, mp_exact, mp_rows

log = logging.getLogger(__name__)


def sum_lower_bound(n: int) -> int:
    """Least integer s with s >= 2*sqrt(n), i.e. s*s >= 4n."""
    return isqrt_ceil(4 * n)


@dataclass(frozen=True)
class NgRecord:
    graph: Graph
    mp_g: int
    mp_gbar: int
    total: int
    lower_bound: int
    upper_bound: int

    @property
    def within_bounds(self) -> bool:
        return self.lower_bound <= self.total <= self.upper_bound

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "graph6": graph6_encode(self.graph),
            "mp": self.mp_g,
            "mp_complement": self.mp_gbar,
            "sum": self.total,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "within_bounds": self.within_bounds,
        }


def ng_sum(g: Graph) -> NgRecord:
    check_capacity(g.n)
    a = mp_exact(g).value
    b = mp_exact(complement(g)).value
    rec = NgRecord(g, a, b, a + b, sum_lower_bound(g.n), 2 * g.n)
    if not rec.within_bounds:
        log.error("counterexample: mp sum %d outside [%d, %d] for %s", rec.total, rec.lower_bound, rec.upper_bound, g)
    return rec


def gen_ng_upper(n: int) -> tuple[Graph, Graph]:
    """C_n and K_n minus that cycle; both have mp = n, so the sum is 2n."""
    if n < 5:
        raise ValueError("the 2n construction needs n >= 5")
    c = cycle_graph(n)
    rest = complement(c)
    for h in (c, rest):
        got = mp_exact(h).value
        if got != n:
            raise ValidationFailed(f"mp of {h} is {got}, expected {n}")
    return c, rest


def ng_upper_cert(n: int) -> ConstructionCert:
    c, rest = gen_ng_upper(n)
    cert = ConstructionCert(rest, "ng_kn_minus_cycle", {"n": n}, {"mp": n, "mp_complement": n})
    cert.notes.append(f"complement is C_{n}: {graph6_encode(c)}")
    return cert


def ng_clique_sizes(n: int) -> list[int]:
    """Clique sizes for the small-sum construction on a perfect square ``n = s*s``.

    Even s: s/2 .. 3s/2 without s.  Odd s: ceil(s/2) .. floor(3s/2).  Either
    window has s distinct sizes averaging s, so it sums to n.
    """
    s = math.isqrt(n)
    if n < 1 or s * s != n:
        raise ValueError(f"{n} is not a perfect square")
    if s % 2 == 0:
        sizes = [c for c in range(s // 2, 3 * s // 2 + 1) if c != s]
    else:
        sizes = list(range((s + 1) // 2, (3 * s) // 2 + 1))
    if sum(sizes) != n:
        raise ValidationFailed(f"clique sizes {sizes} sum to {sum(sizes)}, not {n}")
    return sizes


def gen_ng_cliques(n: int) -> Graph:
    """Disjoint cliques whose mp sum with the complement is floor(5*sqrt(n)/2)."""
    sizes = check_part_sizes(ng_clique_sizes(n))
    g = disjoint_cliques(sizes)
    s = math.isqrt(n)
    rec = ng_sum(g)
    if rec.mp_g != max(sizes) or rec.mp_gbar != len(sizes) or rec.total != (5 * s) // 2:
        raise ValidationFailed(
            f"n={n}: mp={rec.mp_g}, complement mp={rec.mp_gbar}, sum={rec.total}; "
            f"expected {max(sizes)} + {len(sizes)} = {(5 * s) // 2}"
        )
    return g


def ng_cliques_cert(n: int) -> ConstructionCert:
    g = gen_ng_cliques(n)
    s = math.isqrt(n)
    sizes = ng_clique_sizes(n)
    return ConstructionCert(
        g,
        "ng_cliques",
        {"n": n, "sizes": sizes},
        {"mp": max(sizes), "mp_complement": len(sizes), "sum": (5 * s) // 2},
    )


@dataclass
class NgAuditRow:
    n: int
    graphs: int
    min_sum: int
    max_sum: int
    lower_bound: int
    upper_bound: int
    min_witness: str
    max_witness: str
    distribution: dict[int, int]
    violations: list[str] = field(default_factory=list)
    min_chi_gap: int | None = None  # min over graphs of (mp + mp') - (chi + chi')
    sampled: bool = False

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "graphs": self.graphs,
            "sampled": self.sampled,
            "min_sum": self.min_sum,
            "max_sum": self.max_sum,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "min_witness": self.min_witness,
            "max_witness": self.max_witness,
            "distribution": {str(k): v for k, v in sorted(self.distribution.items())},
            "min_chi_gap": self.min_chi_gap,
            "violations": self.violations,
        }


def _audit_exhaustive(n: int, workers: int | None = None) -> NgAuditRow:
    table = census(n, workers=workers)
    mp = table["mp"]
    chi = table["chi"]
    full = table.full
    dist: Counter[int] = Counter()
    lo_mask = hi_mask = 0
    lo = hi = None
    gap = None
    for mask in range(full + 1):
        co = full ^ mask
        total = mp[mask] + mp[co]
        dist[total] += 1
        if lo is None or total < lo:
            lo, lo_mask = total, mask
        if hi is None or total > hi:
            hi, hi_mask = total, mask
        d = total - chi[mask] - chi[co]
        if gap is None or d < gap:
            gap = d
    row = _row(n, full + 1, lo, hi, lo_mask, hi_mask, dist)
    row.min_chi_gap = gap
    if gap < 0:
        row.violations.append(f"mp sum below chi sum by {-gap}")
    return row


def _audit_sampled(n: int, samples: int, seed: int) -> NgAuditRow:
    check_capacity(n)
    rng = random.Random(seed)
    npairs = n * (n - 1) // 2
    full = (1 << npairs) - 1
    dist: Counter[int] = Counter()
    lo = hi = None
    lo_mask = hi_mask = 0
    for _ in range(samples):
        mask = rng.getrandbits(npairs) if npairs else 0
        total = mp_rows(n, rows_from_mask(n, mask)) + mp_rows(n, rows_from_mask(n, full ^ mask))
        dist[total] += 1
        if lo is None or total < lo:
            lo, lo_mask = total, mask
        if hi is None or total > hi:
            hi, hi_mask = total, mask
    row = _row(n, samples, lo, hi, lo_mask, hi_mask, dist)
    row.sampled = True
    return row


def _row(n, count, lo, hi, lo_mask, hi_mask, dist) -> NgAuditRow:
    lower, upper = sum_lower_bound(n), 2 * n
    row = NgAuditRow(
        n=n,
        graphs=count,
        min_sum=lo,
        max_sum=hi,
        lower_bound=lower,
        upper_bound=upper,
        min_witness=graph6_encode(Graph._trusted(n, rows_from_mask(n, lo_mask))),
        max_witness=graph6_encode(Graph._trusted(n, rows_from_mask(n, hi_mask))),
        distribution=dict(dist),
    )
    if lo < lower:
        row.violations.append(f"min sum {lo} < {lower}")
    if hi > upper:
        row.violations.append(f"max sum {hi} > {upper}")
    return row


def ng_exhaustive_audit(
    n_max: int, samples: int = 2000, seed: int = 0, workers: int | None = None, n_min: int = 1
) -> list[NgAuditRow]:
    """Min/max of mp(G) + mp(G') per n, exhaustive over labeled graphs up to 7 vertices.

    Larger ``n`` falls back to ``samples`` random labeled graphs.  Violations of
    either bound (or of mp sum >= chi sum) are recorded on the row and logged.
    """
    rows = []
    for n in range(n_min, n_max + 1):
        row = _audit_exhaustive(n, workers) if n <= EXHAUSTIVE_CAP else _audit_sampled(n, samples, seed)
        if row.violations:
            log.error("counterexample at n=%d: %s", n, row.violations)
        rows.append(row)
    return rows


def chi_sum(g: Graph) -> int:
    return chromatic_number(g) + chromatic_number(complement(g))
