"""Simple undirected graphs on vertices ``0..n-1`` stored as adjacency bitsets.

Row ``adj[v]`` is a Python int whose bit ``u`` is set iff ``uv`` is an edge.
Graphs are immutable; build them with :meth:`Graph.from_edges` or one of the
named constructors at the bottom of this module.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class CapacityError(ValueError):
    """Raised when a graph exceeds the vertex cap of a solver."""


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.message = message
        self.offset = offset


def check_capacity(n: int, limit: int = MAX_VERTICES, what: str = "solver") -> None:
    if n > limit:
        raise CapacityError(f"{what} supports at most {limit} vertices, got {n}")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency must have exactly n rows")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or row < 0:
                raise ValueError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            bits = row
            while bits:
                low = bits & -bits
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
                bits ^= low

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        # Caller guarantees symmetry and irreflexivity; used by enumerators.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._trusted(n, [0] * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits_of(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self.adj):
            out.extend((u, v) for v in bits_of(row >> (u + 1) << (u + 1)))
        return out

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    sorted_multiset: tuple[int, ...]


def bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def degree_profile(g: Graph) -> DegreeProfile:
    degs = g.degrees
    return DegreeProfile(degs, tuple(sorted(degs)))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph._trusted(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)])


def is_connected(g: Graph) -> bool:
    return rows_connected(g.n, g.adj)


def rows_connected(n: int, adj: Sequence[int]) -> bool:
    if n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits_of(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def bipartition(g: Graph) -> tuple[int, int] | None:
    """Return colour-class bitmasks of a proper 2-colouring, or None."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in bits_of(g.adj[v]):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    a = sum(1 << v for v in range(g.n) if side[v] == 0)
    return a, ((1 << g.n) - 1) & ~a


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 1 << 36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in range(30, -1, -6)])
    raise ValueError(f"graph6 cannot encode n={n}")


def graph6_encode(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        bits.extend(row >> i & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)
    )
    return (_encode_n(g.n) + body).decode("ascii")


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    start = len(text) - len(text.lstrip())
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
        start += len(">>graph6<<")
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside range 63..126", start + i)
    if not s:
        raise Graph6Error("empty graph6 string", start)
    data = [ord(ch) - 63 for ch in s]
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte vertex count", start + len(data))
        n, pos = _from_sextets(data[2:8]), 8
    else:
        if len(data) < 4:
            raise Graph6Error("truncated 4-byte vertex count", start + len(data))
        n, pos = _from_sextets(data[1:4]), 4
    if n < 1:
        raise Graph6Error("graph6 requires at least one vertex", start)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(data) - pos
    if have < need:
        raise Graph6Error(f"truncated edge data: need {need} bytes, have {have}", start + len(data))
    if have > need:
        raise Graph6Error(f"{have - need} unexpected trailing bytes", start + pos + need)
    adj = [0] * n
    b = 0
    j, i = 1, 0
    for byte in data[pos:]:
        for shift in range(5, -1, -1):
            if b == nbits:
                break
            if byte >> shift & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            b += 1
            i += 1
            if i == j:
                j, i = j + 1, 0
    return Graph._trusted(n, adj)


def _from_sextets(values: Sequence[int]) -> int:
    out = 0
    for v in values:
        out = out << 6 | v
    return out


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Decode one graph per non-blank line; parse errors carry the line number."""
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            yield graph6_decode(line)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc.message}", exc.offset) from None


# ---------------------------------------------------------------------------
# labeled enumeration
# ---------------------------------------------------------------------------

def pair_index(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 column order: (0,1), (0,2), (1,2), (0,3), ..."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def rows_from_mask(n: int, mask: int) -> list[int]:
    """Adjacency rows of the labeled graph whose edge bit ``b`` is ``pair_index(n)[b]``."""
    adj = [0] * n
    off = 0
    for j in range(1, n):
        lower = mask >> off & ((1 << j) - 1)
        off += j
        if lower:
            adj[j] = lower
            bj = 1 << j
            while lower:
                low = lower & -lower
                adj[low.bit_length() - 1] |= bj
                lower ^= low
    return adj


def labeled_graphs(n: int, num_edges: int | None = None) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, optionally with a fixed edge count."""
    npairs = n * (n - 1) // 2
    if num_edges is None:
        masks: Iterable[int] = range(1 << npairs)
    else:
        masks = (sum(1 << b for b in c) for c in combinations(range(npairs), num_edges))
    for mask in masks:
        yield Graph._trusted(n, rows_from_mask(n, mask))


# ---------------------------------------------------------------------------
# named graphs
# ---------------------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return complement(Graph.empty(n))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Parts are consecutive index blocks, in the order given."""
    n = sum(sizes)
    part = []
    for p, size in enumerate(sizes):
        part.extend([p] * size)
    return Graph.from_edges(n, ((u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]))


def disjoint_cliques(sizes: Sequence[int]) -> Graph:
    return complement(complete_multipartite(sizes))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
