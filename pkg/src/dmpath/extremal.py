"""Turan numbers t(n,k), distinct-part optimum g(n,k), and f(n,k).

f(n,k) is the most edges in an n-vertex graph with mp(G) < k, i.e. with no
degree-monotone path on k VERTICES.  All bound arithmetic is exact: integers
and :class:`fractions.Fraction`, never floats.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable

from .census import EXHAUSTIVE_CAP
from .constructions import turan_part_sizes
from .graph import CapacityError, Graph, complete_multipartite, graph6_encode, read_graph6_lines, rows_from_mask
from .solver import has_monotone_path, mp_exact

log = logging.getLogger(__name__)

CLOSED_FORM = "closed_form"
SEQUENCE_ENUMERATION = "sequence_enumeration"
EXHAUSTIVE_LABELED = "exhaustive_labeled"
GRAPH6_STREAM = "graph6_stream"


class ExtremalError(ValueError):
    pass


@dataclass
class ExtremalRecord:
    n: int
    k: int
    quantity: str
    value: int
    witnesses: list[str] = field(default_factory=list)
    provenance: str = CLOSED_FORM
    stream: str | None = None
    parts: list[tuple[int, ...]] = field(default_factory=list)
    bound: Fraction | None = None

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "quantity": self.quantity,
            "value": self.value,
            "provenance": self.provenance,
            "witnesses": self.witnesses,
        }
        if self.stream is not None:
            out["stream"] = self.stream
        if self.parts:
            out["parts"] = [list(p) for p in self.parts]
        if self.bound is not None:
            out["bound"] = str(self.bound)
        return out

    def csv_row(self) -> str:
        return f"{self.n},{self.k},{self.quantity},{self.value},{self.provenance}"


# ---------------------------------------------------------------------------
# t(n, k)
# ---------------------------------------------------------------------------

def turan_bound(n: int, k: int) -> Fraction:
    """n^2 (k-2) / (2(k-1))."""
    return Fraction(n * n * (k - 2), 2 * (k - 1))


def turan_number(n: int, k: int) -> int:
    """Edges of the balanced complete (k-1)-partite graph on n vertices."""
    if k < 2:
        raise ExtremalError("t(n,k) needs k >= 2")
    if n < 0:
        raise ExtremalError("t(n,k) needs n >= 0")
    t = comb(n, 2) - sum(comb(s, 2) for s in turan_part_sizes(n, k - 1))
    if t > turan_bound(n, k):
        raise AssertionError(f"t({n},{k}) = {t} exceeds n^2(k-2)/(2(k-1))")
    return t


def turan_record(n: int, k: int, witness: bool = False) -> ExtremalRecord:
    rec = ExtremalRecord(n, k, "t", turan_number(n, k), bound=turan_bound(n, k))
    if witness and n >= 1:
        rec.witnesses.append(graph6_encode(complete_multipartite(turan_part_sizes(n, k - 1))))
    return rec


# ---------------------------------------------------------------------------
# g(n, k)
# ---------------------------------------------------------------------------

def distinct_part_sequences(n: int, parts: int, smallest: int = 1) -> Iterable[tuple[int, ...]]:
    """Strictly increasing positive sequences of length ``parts`` summing to ``n``."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    # the remaining parts - 1 terms are at least a+1, a+2, ...
    a = smallest
    while a * parts + parts * (parts - 1) // 2 <= n:
        for rest in distinct_part_sequences(n - a, parts - 1, a + 1):
            yield (a,) + rest
        a += 1


def _g_optimum(n: int, parts: int) -> tuple[int, list[tuple[int, ...]]]:
    """Minimise the sum of squares (equivalently maximise sum_{i<j} a_i a_j).

    Branch and bound: with ``m`` parts left summing to ``R``, the squares add at
    least R^2/m.  Ties are kept so every optimal sequence is reported.
    """
    best_sq: int | None = None
    best: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def walk(remaining: int, m: int, low: int, sq: int) -> None:
        nonlocal best_sq, best
        if m == 0:
            if remaining == 0:
                if best_sq is None or sq < best_sq:
                    best_sq, best = sq, [tuple(prefix)]
                elif sq == best_sq:
                    best.append(tuple(prefix))
            return
        if best_sq is not None and m * sq + remaining * remaining > m * best_sq:
            return
        a = low
        while a * m + m * (m - 1) // 2 <= remaining:
            prefix.append(a)
            walk(remaining - a, m - 1, a + 1, sq + a * a)
            prefix.pop()
            a += 1

    walk(n, parts, 1, 0)
    if best_sq is None:
        raise ExtremalError(f"no {parts} distinct positive parts sum to {n}")
    return (n * n - best_sq) // 2, best


def g_min_n(k: int) -> int:
    """Smallest n admitting k-1 distinct positive parts: 1 + 2 + ... + (k-1)."""
    return k * (k - 1) // 2


def g_value(n: int, k: int) -> int:
    if k < 3:
        raise ExtremalError("g(n,k) needs k >= 3")
    if n < g_min_n(k):
        raise ExtremalError(f"g({n},{k}) needs n >= {g_min_n(k)} for {k - 1} distinct parts")
    return _g_optimum(n, k - 1)[0]


def g_number(n: int, k: int, witness: bool = True) -> ExtremalRecord:
    """g(n,k) with every optimal part sequence; the witness realises the first.

    The witness is the complete (k-1)-partite graph with those parts, whose
    mp is k-1.
    """
    value = g_value(n, k)
    _, seqs = _g_optimum(n, k - 1)
    rec = ExtremalRecord(n, k, "g", value, provenance=SEQUENCE_ENUMERATION, parts=seqs)
    if witness:
        rec.witnesses.append(graph6_encode(complete_multipartite(seqs[0])))
    return rec


# ---------------------------------------------------------------------------
# f(n, k)
# ---------------------------------------------------------------------------

def _f_block(n: int, k: int, lo: int, hi: int, floor: int) -> tuple[int, list[int]]:
    """Best edge count with mp < k over masks lo..hi-1, skipping counts below ``floor``."""
    best = floor
    found: list[int] = []
    for mask in range(lo, hi):
        m = mask.bit_count()
        if m < best:
            continue
        adj = rows_from_mask(n, mask)
        if has_monotone_path(n, adj, k):
            continue
        if m > best:
            best, found = m, []
        found.append(mask)
    return best, found


def _f_parallel(n: int, k: int, workers: int) -> tuple[int, tuple[str, ...]]:
    total = 1 << (n * (n - 1) // 2)
    size = -(-total // (workers * 4))
    bounds = [(lo, min(lo + size, total)) for lo in range(0, total, size)]
    best = -1
    masks: list[int] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        jobs = pool.map(_f_block, *zip(*((n, k, lo, hi, 0) for lo, hi in bounds)))
        for m, found in jobs:
            if not found:
                continue
            if m > best:
                best, masks = m, []
            if m == best:
                masks.extend(found)
    return best, tuple(sorted(graph6_encode(Graph._trusted(n, rows_from_mask(n, x))) for x in masks))


@lru_cache(maxsize=None)
def _f_exhaustive(n: int, k: int, workers: int = 1) -> tuple[int, tuple[str, ...]]:
    if workers > 1 and n >= 6:
        return _f_parallel(n, k, workers)
    npairs = n * (n - 1) // 2
    for m in range(npairs, -1, -1):
        found = []
        for combo in combinations(range(npairs), m):
            mask = 0
            for b in combo:
                mask |= 1 << b
            adj = rows_from_mask(n, mask)
            if not has_monotone_path(n, adj, k):
                found.append(graph6_encode(Graph._trusted(n, adj)))
        if found:
            return m, tuple(sorted(found))
    raise ExtremalError(f"no graph on {n} vertices has mp < {k}")


def f_number(
    n: int,
    k: int,
    source: str = "exhaustive",
    stream: Iterable[str] | None = None,
    stream_name: str = "<stream>",
    cap: int = EXHAUSTIVE_CAP,
    workers: int = 1,
) -> ExtremalRecord:
    """f(n,k): most edges on n vertices with no degree-monotone path on k vertices.

    ``exhaustive`` scans labeled graphs by decreasing edge count and stops at
    the first count with a witness; all labeled witnesses at that count are
    returned.  ``stream`` takes graph6 lines that must cover every graph on
    ``n`` vertices up to isomorphism; graphs of other orders are skipped.
    With ``workers > 1`` the labeled scan is split into mask blocks whose
    results are merged in block order; the answer does not depend on it.
    """
    if k < 2:
        raise ExtremalError("f(n,k) needs k >= 2")
    if n < 1:
        raise ExtremalError("f(n,k) needs n >= 1")
    if source == "exhaustive":
        if n > cap:
            raise CapacityError(f"exhaustive f needs n <= {cap}; supply a graph6 stream instead")
        value, witnesses = _f_exhaustive(n, k, max(1, workers))
        return ExtremalRecord(n, k, "f", value, list(witnesses), EXHAUSTIVE_LABELED)
    if source != "stream":
        raise ExtremalError(f"unknown source {source!r}")
    if stream is None:
        raise ExtremalError("stream mode needs a graph6 source")
    best = -1
    witnesses: list[str] = []
    seen = 0
    for g in read_graph6_lines(stream):
        if g.n != n:
            continue
        seen += 1
        m = g.num_edges
        if m < best:
            continue
        if not has_monotone_path(n, g.adj, k):
            if m > best:
                best, witnesses = m, []
            witnesses.append(graph6_encode(g))
    if not seen:
        raise ExtremalError(f"stream {stream_name} has no graphs on {n} vertices")
    if best < 0:
        raise ExtremalError(f"no graph in {stream_name} has mp < {k}")
    return ExtremalRecord(n, k, "f", best, witnesses, GRAPH6_STREAM, stream=stream_name)


# ---------------------------------------------------------------------------
# audits
# ---------------------------------------------------------------------------

@dataclass
class BoundAudit:
    n: int
    k: int
    f: int
    t: int
    g: int | None
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def audit_f_bounds(n: int, k: int) -> BoundAudit:
    """Check g <= f <= t, and f <= t - 1 when k >= 4 and n >= k + 1."""
    f = f_number(n, k).value
    t = turan_number(n, k)
    g = g_value(n, k) if k >= 3 and n >= g_min_n(k) else None
    checks = {"f<=t": f <= t}
    if k >= 4 and n >= k + 1:
        checks["f<=t-1"] = f <= t - 1
    if g is not None:
        checks["g<=f"] = g <= f
    audit = BoundAudit(n, k, f, t, g, checks)
    if not audit.ok:
        log.error("counterexample at n=%d k=%d: %s", n, k, checks)
    return audit


def gap_bound(k: int) -> Fraction:
    """(k^3 + 5k + 3) / 24."""
    if k < 3:
        raise ExtremalError("the gap bound needs k >= 3")
    return Fraction(k ** 3 + 5 * k + 3, 24)


def gap_threshold(k: int) -> int:
    """Smallest n covered by the gap theorem: ceil((k-1)(k+2)/2)."""
    return -(-(k - 1) * (k + 2) // 2)


@dataclass(frozen=True)
class GapRow:
    n: int
    k: int
    t: int
    g: int
    gap: int
    bound: Fraction

    @property
    def ok(self) -> bool:
        return self.gap <= self.bound

    def csv_row(self) -> str:
        return f"{self.n},{self.k},{self.t},{self.g},{self.gap},{self.bound},{str(self.ok).lower()}"


GAP_HEADER = "n,k,t,g,gap,bound,ok"


def gap_sweep(k: int, n_max: int, n_min: int | None = None) -> list[GapRow]:
    """t(n,k) - g(n,k) against the gap bound for every admissible n up to ``n_max``."""
    bound = gap_bound(k)
    start = gap_threshold(k) if n_min is None else max(n_min, gap_threshold(k))
    rows = []
    for n in range(start, n_max + 1):
        t, g = turan_number(n, k), g_value(n, k)
        rows.append(GapRow(n, k, t, g, t - g, bound))
    return rows


@dataclass(frozen=True)
class ConjectureRow:
    n: int
    k: int
    f: int
    g: int | None

    @property
    def equal(self) -> bool | None:
        return None if self.g is None else self.f == self.g

    def csv_row(self) -> str:
        g = "" if self.g is None else str(self.g)
        eq = "" if self.equal is None else str(self.equal).lower()
        return f"{self.n},{self.k},{self.f},{g},{eq}"


CONJECTURE_HEADER = "n,k,f,g,equal"


def conjecture_scan(k_max: int, n_max: int, k_min: int = 3) -> list[ConjectureRow]:
    """Compare f(n,k) with g(n,k) wherever f is exhaustively computable.

    Rows with f != g are findings, not failures.  Rows below the minimum n for
    k-1 distinct parts carry no g.
    """
    n_max = min(n_max, EXHAUSTIVE_CAP)
    rows = []
    for k in range(k_min, k_max + 1):
        for n in range(1, n_max + 1):
            f = f_number(n, k).value
            g = g_value(n, k) if n >= g_min_n(k) else None
            rows.append(ConjectureRow(n, k, f, g))
    return rows


def witness_mp_ok(rec: ExtremalRecord) -> bool:
    """Every f witness has mp < k; every g witness has mp = k - 1."""
    from .graph import graph6_decode

    for text in rec.witnesses:
        mp = mp_exact(graph6_decode(text)).value
        if rec.quantity == "f" and mp >= rec.k:
            return False
        if rec.quantity == "g" and mp != rec.k - 1:
            return False
    return True
