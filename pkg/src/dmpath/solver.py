"""Exact mp(G), chromatic/clique/independence numbers, and the mp <= 2 structure.

Length convention: a path's length is its number of VERTICES.  A single edge is
a degree-monotone path of length 2, so mp(G) = 1 exactly when G has no edges.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

from .graph import (
    MAX_VERTICES,
    Graph,
    bits_of,
    check_capacity,
    complement,
    is_connected,
)

log = logging.getLogger(__name__)

CHROMATIC_LIMIT = 32

NONDECREASING = "nondecreasing"
NONINCREASING = "nonincreasing"
BOTH = "both"


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class PathRecord:
    vertices: tuple[int, ...]
    degree_seq: tuple[int, ...]
    direction: str

    @property
    def length(self) -> int:
        """Number of vertices on the path."""
        return len(self.vertices)

    @classmethod
    def of(cls, g: Graph, vertices: Sequence[int]) -> "PathRecord":
        degs = tuple(g.degree(v) for v in vertices)
        return cls(tuple(vertices), degs, _direction(degs))

    def validate(self, g: Graph, strict: bool = False) -> None:
        """Raise ``ValueError`` unless this is a degree-monotone path of ``g``."""
        vs = self.vertices
        if not vs:
            raise ValueError("empty path")
        if len(set(vs)) != len(vs):
            raise ValueError("path repeats a vertex")
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                raise ValueError(f"{a} and {b} are not adjacent")
        if self.degree_seq != tuple(g.degree(v) for v in vs):
            raise ValueError("degree sequence does not match the host graph")
        if self.direction != _direction(self.degree_seq):
            raise ValueError("direction inconsistent with degree sequence")
        if self.direction is None:
            raise ValueError("degree sequence is not monotone")
        if strict and any(a == b for a, b in zip(self.degree_seq, self.degree_seq[1:])):
            raise ValueError("degree sequence is not strictly monotone")


def _direction(degs: Sequence[int]) -> str | None:
    up = all(a <= b for a, b in zip(degs, degs[1:]))
    down = all(a >= b for a, b in zip(degs, degs[1:]))
    if up and down:
        return BOTH
    if up:
        return NONDECREASING
    if down:
        return NONINCREASING
    return None


@dataclass(frozen=True)
class MpResult:
    value: int
    witness: PathRecord
    lower_bound_chain: tuple[int, int, int] | None = None  # (chi, omega, ceil(n/alpha))


@dataclass(frozen=True)
class BipartiteDominancePartition:
    part_a: frozenset[int]
    part_b: frozenset[int]
    valid: bool


# ---------------------------------------------------------------------------
# longest monotone path
# ---------------------------------------------------------------------------

def longest_monotone_path(
    n: int,
    adj: Sequence[int],
    keys: Sequence[int],
    strict: bool = False,
    target: int | None = None,
    lex: bool = True,
) -> tuple[int, list[int]]:
    """Longest path along which ``keys`` never decrease (strictly increase if ``strict``).

    Returns ``(length, vertices)``.  With ``lex`` the path is the
    lexicographically smallest among the longest ones; without it, vertices are
    tried in key order, which reaches long paths sooner but fixes no particular
    witness.  With ``target`` set the search stops at the first path having that
    many vertices.

    Branch and bound: a non-decreasing path visits each key class in one
    contiguous run, and that run is itself a path inside the class, so a class
    with no internal edge contributes at most one vertex.
    """
    if n == 0:
        return 0, []
    order = sorted(set(keys))
    rank = {k: i for i, k in enumerate(order)}
    cls = [0] * len(order)
    for v in range(n):
        cls[rank[keys[v]]] |= 1 << v
    # cap[i]: most vertices a run inside class i can use
    cap = []
    for members in cls:
        internal = False
        if not strict:
            m = members
            while m:
                low = m & -m
                if adj[low.bit_length() - 1] & members:
                    internal = True
                    break
                m ^= low
        cap.append(members.bit_count() if internal else 1)
    # at_least[i]: union of classes i.., tail[i]: sum of caps above class i
    at_least = [0] * (len(order) + 1)
    tail = [0] * len(order)
    running = 0
    for i in range(len(order) - 1, -1, -1):
        tail[i] = running
        running += cap[i]
        at_least[i] = at_least[i + 1] | cls[i]
    global_ub = min(n, running)

    vrank = [rank[keys[v]] for v in range(n)]
    vorder = range(n) if lex else sorted(range(n), key=lambda v: (keys[v], v))
    reach = []   # vertices that may still follow v on a monotone path
    same = []
    vcap = []
    vtail = []
    steps = []   # (u, bit) neighbours that may directly follow v, in search order
    for v in range(n):
        i = vrank[v]
        r = at_least[i + 1] if strict else at_least[i]
        reach.append(r)
        same.append(0 if strict else cls[i])
        vcap.append(cap[i] - 1)
        vtail.append(tail[i])
        nb = adj[v] & r
        steps.append([(u, 1 << u) for u in vorder if nb >> u & 1])

    best_len = 0
    best_path: list[int] = []
    stop = target if target is not None else global_ub
    path: list[int] = []

    def dfs(v: int, visited: int, length: int) -> bool:
        nonlocal best_len, best_path
        if length > best_len:
            best_len = length
            best_path = path.copy()
            if best_len >= stop:
                return True
        free = ~visited
        bound = (same[v] & free).bit_count()
        if bound > vcap[v]:
            bound = vcap[v]
        bound += vtail[v]
        alt = (reach[v] & free).bit_count()
        if alt < bound:
            bound = alt
        if length + bound <= best_len:
            return False
        for u, bit in steps[v]:
            if visited & bit:
                continue
            path.append(u)
            done = dfs(u, visited | bit, length + 1)
            path.pop()
            if done:
                return True
        return False

    for s in vorder:
        path.append(s)
        done = dfs(s, 1 << s, 1)
        path.pop()
        if done:
            break
    return best_len, best_path


def mp_rows(n: int, adj: Sequence[int], strict: bool = False, target: int | None = None) -> int:
    """mp of raw adjacency rows, without a witness; the fast path for sweeps.

    Same bound as :func:`longest_monotone_path`, with start vertices taken in
    increasing degree.  With ``target`` the search stops once a monotone path
    on ``target`` vertices is found and returns that lower value.
    """
    if n == 0:
        return 0
    degs = [row.bit_count() for row in adj]
    cls: dict[int, int] = {}
    for v in range(n):
        d = degs[v]
        cls[d] = cls.get(d, 0) | (1 << v)
    ds = sorted(cls)
    cap = {}
    total = 0
    for d in ds:
        members = cls[d]
        c = 1
        if not strict:
            m = members
            while m:
                low = m & -m
                if adj[low.bit_length() - 1] & members:
                    c = members.bit_count()
                    break
                m ^= low
        cap[d] = c
        total += c
    ub = min(n, total)
    if target is not None:
        ub = min(ub, target)
    reach_of = {}
    tail_of = {}
    above = 0
    run = 0
    for d in reversed(ds):
        tail_of[d] = run
        run += cap[d]
        reach_of[d] = above if strict else above | cls[d]
        above |= cls[d]
    reach = [reach_of[d] for d in degs]
    step = [adj[v] & reach[v] for v in range(n)]
    same = [0 if strict else cls[d] for d in degs]
    vcap = [cap[d] - 1 for d in degs]
    vtail = [tail_of[d] for d in degs]
    best = 1
    if best >= ub:
        return best

    def dfs(v: int, visited: int, length: int) -> bool:
        nonlocal best
        if length > best:
            best = length
            if best >= ub:
                return True
        free = ~visited
        b = (same[v] & free).bit_count()
        if b > vcap[v]:
            b = vcap[v]
        b += vtail[v]
        a = (reach[v] & free).bit_count()
        if length + (a if a < b else b) <= best:
            return False
        cand = step[v] & free
        while cand:
            low = cand & -cand
            cand ^= low
            if dfs(low.bit_length() - 1, visited | low, length + 1):
                return True
        return False

    for s in sorted(range(n), key=degs.__getitem__):
        if dfs(s, 1 << s, 1):
            break
    return best


def has_monotone_path(n: int, adj: Sequence[int], k: int, strict: bool = False) -> bool:
    """True iff some degree-monotone path has at least ``k`` vertices."""
    if k <= 1:
        return n >= k
    return mp_rows(n, adj, strict, target=k) >= k


def mp_exact(g: Graph, strict: bool = False, lower_bounds: bool = False) -> MpResult:
    """Exact mp(G) in vertices, with the lexicographically smallest non-decreasing witness.

    A path read backwards flips direction, so it suffices to search
    non-decreasing paths from every start vertex.
    """
    if g.n < 1:
        raise PreconditionError("mp is defined for graphs with at least one vertex")
    check_capacity(g.n)
    length, vertices = longest_monotone_path(g.n, g.adj, g.degrees, strict)
    result = MpResult(length, PathRecord.of(g, vertices))
    if lower_bounds:
        alpha = independence_number(g)
        chain = (chromatic_number(g), clique_number(g), ceil_div(g.n, alpha))
        result = MpResult(length, result.witness, chain)
    return result


def mp_both_directions_witness(g: Graph, strict: bool = False) -> tuple[PathRecord, PathRecord]:
    """Longest non-decreasing and longest non-increasing witnesses (equal length)."""
    if g.n < 1:
        raise PreconditionError("mp is defined for graphs with at least one vertex")
    check_capacity(g.n)
    degs = g.degrees
    _, up = longest_monotone_path(g.n, g.adj, degs, strict)
    _, down = longest_monotone_path(g.n, g.adj, [-d for d in degs], strict)
    return PathRecord.of(g, up), PathRecord.of(g, down)


# ---------------------------------------------------------------------------
# clique, independence and chromatic numbers
# ---------------------------------------------------------------------------

def max_clique_rows(adj: Sequence[int], cand: int) -> int:
    """Size of a maximum clique inside the vertex set ``cand``.

    Branch and bound with a greedy colouring bound on the candidate set.
    """
    best = 0

    def colour_bound(p: int) -> list[tuple[int, int]]:
        # returns (vertex, colour) pairs in increasing colour order
        out = []
        colour = 0
        uncoloured = p
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                uncoloured ^= low
                out.append((v, colour))
                q &= ~adj[v] & ~low
        return out

    def expand(size: int, p: int) -> None:
        nonlocal best
        order = colour_bound(p)
        for v, colour in reversed(order):
            if size + colour <= best:
                return
            np_ = p & adj[v]
            if np_:
                expand(size + 1, np_)
            elif size + 1 > best:
                best = size + 1
            p &= ~(1 << v)

    if cand:
        expand(0, cand)
    return best


def clique_number(g: Graph) -> int:
    check_capacity(g.n)
    return max_clique_rows(g.adj, (1 << g.n) - 1)


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


def _greedy_colouring(n: int, adj: Sequence[int], order: Sequence[int]) -> int:
    classes: list[int] = []
    for v in order:
        for i, members in enumerate(classes):
            if not members & adj[v]:
                classes[i] |= 1 << v
                break
        else:
            classes.append(1 << v)
    return len(classes)


def _colourable(n: int, adj: Sequence[int], k: int, degs: Sequence[int]) -> bool:
    """Backtracking k-colouring test with DSATUR vertex selection."""
    colour = [-1] * n
    forbidden = [0] * n  # bitmask of colours used by coloured neighbours

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if colour[v] < 0:
                kv = (forbidden[v].bit_count(), degs[v], -v)
                if key is None or kv > key:
                    best, key = v, kv
        return best

    def solve(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        limit = min(k, used + 1)
        for c in range(limit):
            if forbidden[v] >> c & 1:
                continue
            colour[v] = c
            touched = []
            ok = True
            for u in bits_of(adj[v]):
                if colour[u] < 0 and not forbidden[u] >> c & 1:
                    forbidden[u] |= 1 << c
                    touched.append(u)
                    if forbidden[u].bit_count() == k:
                        ok = False
            if ok and solve(done + 1, max(used, c + 1)):
                return True
            for u in touched:
                forbidden[u] &= ~(1 << c)
            colour[v] = -1
        return False

    return solve(0, 0)


def chromatic_rows(n: int, adj: Sequence[int]) -> int:
    if n == 0:
        return 0
    if not any(adj):
        return 1
    degs = [row.bit_count() for row in adj]
    order = sorted(range(n), key=lambda v: (-degs[v], v))
    upper = _greedy_colouring(n, adj, order)
    lower = max_clique_rows(adj, (1 << n) - 1)
    for k in range(lower, upper):
        if _colourable(n, adj, k, degs):
            return k
    return upper


def chromatic_number(g: Graph, limit: int = CHROMATIC_LIMIT) -> int:
    """Exact chromatic number; iterative deepening from the clique number."""
    check_capacity(g.n, limit, "chromatic number solver")
    return chromatic_rows(g.n, g.adj)


def mp_lower_bound_chromatic(g: Graph, limit: int = CHROMATIC_LIMIT) -> int:
    """chi(G), which every graph's mp is at least."""
    return chromatic_number(g, limit)


# ---------------------------------------------------------------------------
# audits and characterisations
# ---------------------------------------------------------------------------

@dataclass
class CorollaryReport:
    n: int
    mp: int
    omega: int
    alpha: int
    max_degree: int
    mp_ge_omega: bool
    mp_ge_n_over_alpha: bool
    max_mp_alpha_ge_sqrt_n: bool
    r: int | None = None
    k1r_free: bool | None = None
    k1r_bound: int | None = None
    mp_ge_k1r_bound: bool | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def is_k1r_free(g: Graph, r: int) -> bool:
    """No vertex has ``r`` pairwise non-adjacent neighbours."""
    check_capacity(g.n)
    co = complement(g).adj
    return all(max_clique_rows(co, g.adj[v]) < r for v in range(g.n))


def check_corollary_bounds(g: Graph, r: int | None = None) -> CorollaryReport:
    """Audit mp >= omega, mp >= n/alpha, max(mp, alpha) >= sqrt(n), and the K_{1,r}-free bound.

    All comparisons are in integers; a failed entry is a counterexample and is
    logged at error level.
    """
    if r is not None and r < 3:
        raise PreconditionError("the K_{1,r}-free bound needs r >= 3")
    mp = mp_exact(g).value
    omega = clique_number(g)
    alpha = independence_number(g)
    top = max(mp, alpha)
    report = CorollaryReport(
        n=g.n,
        mp=mp,
        omega=omega,
        alpha=alpha,
        max_degree=g.max_degree,
        mp_ge_omega=mp >= omega,
        mp_ge_n_over_alpha=mp * alpha >= g.n,
        max_mp_alpha_ge_sqrt_n=top * top >= g.n,
        r=r,
    )
    if r is not None:
        report.k1r_free = is_k1r_free(g, r)
        if report.k1r_free:
            report.k1r_bound = -(-report.max_degree // (r - 1)) + 1
            report.mp_ge_k1r_bound = mp >= report.k1r_bound
    for name in ("mp_ge_omega", "mp_ge_n_over_alpha", "max_mp_alpha_ge_sqrt_n", "mp_ge_k1r_bound"):
        if getattr(report, name) is False:
            report.violations.append(name)
    if report.violations:
        log.error("counterexample: %s fails %s", g, report.violations)
    return report


def characterize_mp2(g: Graph) -> BipartiteDominancePartition:
    """Decide mp(G) = 2 for a connected graph on at least 3 vertices without searching paths.

    Every edge puts its strictly larger-degree endpoint in A.  This makes A the
    set of vertices whose degree beats all of their neighbours; the verdict is
    valid iff every edge joins A to its complement.
    """
    if g.n < 3:
        raise PreconditionError("characterisation needs at least 3 vertices")
    if not is_connected(g):
        raise PreconditionError("characterisation needs a connected graph")
    degs = g.degrees
    a = frozenset(
        v for v in range(g.n) if all(degs[v] > degs[u] for u in bits_of(g.adj[v]))
    )
    b = frozenset(range(g.n)) - a
    valid = all((u in a) != (v in a) for u, v in g.edges())
    return BipartiteDominancePartition(a, b, valid)


def regular_edges(g: Graph) -> list[tuple[int, int]]:
    """Edges whose endpoints have equal degree."""
    degs = g.degrees
    return [(u, v) for u, v in g.edges() if degs[u] == degs[v]]


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def isqrt_ceil(x: int) -> int:
    """Least integer s with s*s >= x."""
    s = math.isqrt(x)
    return s if s * s == x else s + 1


__all__ = [
    "MAX_VERTICES",
    "BipartiteDominancePartition",
    "CorollaryReport",
    "MpResult",
    "PathRecord",
    "PreconditionError",
    "characterize_mp2",
    "check_corollary_bounds",
    "chromatic_number",
    "clique_number",
    "has_monotone_path",
    "independence_number",
    "longest_monotone_path",
    "mp_both_directions_witness",
    "mp_exact",
    "mp_lower_bound_chromatic",
    "mp_rows",
    "regular_edges",
]
