"""Certified generators for the extremal families, plus MOP / maximal-planar validators.

Every generator checks its own claims with the solvers before returning and
raises :class:`ValidationFailed` instead of emitting an unverified graph.

Fan labelling used throughout: hub ``v = 0`` and cycle vertices
``v_i = i`` for ``1 <= i <= r-1``, with the cycle ``v, v_1, ..., v_{r-1}``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .graph import (
    Graph,
    bits_of,
    complete_multipartite,
    graph6_decode,
    graph6_encode,
    is_connected,
)
from .solver import CHROMATIC_LIMIT, chromatic_number, mp_exact, regular_edges

FAMILIES = (
    "fan",
    "mop_a",
    "mop_b_irregular",
    "maxplanar_1",
    "maxplanar_2",
    "multipartite_distinct",
    "turan",
    "ng_cliques",
    "ng_kn_minus_cycle",
)


class ConstructionError(ValueError):
    pass


class ValidationFailed(ConstructionError):
    """A generated graph did not satisfy one of its claims."""


class NotMaximalOuterplanar(ValueError):
    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"{condition}: {detail}" if detail else condition)
        self.condition = condition


class RotationError(ValueError):
    pass


Rotation = tuple[tuple[int, ...], ...]


@dataclass
class ConstructionCert:
    graph: Graph
    family: str
    params: dict[str, Any]
    claims: dict[str, Any]
    embedding: Rotation | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "params": self.params,
            "n": self.graph.n,
            "edges": self.graph.num_edges,
            "graph6": graph6_encode(self.graph),
            "claims": self.claims,
            "embedding": [list(r) for r in self.embedding] if self.embedding else None,
            "notes": self.notes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "ConstructionCert":
        emb = doc.get("embedding")
        return cls(
            graph=graph6_decode(doc["graph6"]),
            family=doc["family"],
            params=dict(doc.get("params", {})),
            claims=dict(doc.get("claims", {})),
            embedding=tuple(tuple(r) for r in emb) if emb else None,
            notes=list(doc.get("notes", [])),
        )


@dataclass(frozen=True)
class MopCertificate:
    hamiltonian_cycle: tuple[int, ...]
    chords: tuple[tuple[int, int], ...]


# ---------------------------------------------------------------------------
# claim checking
# ---------------------------------------------------------------------------

def verify_claims(cert: ConstructionCert) -> None:
    """Re-derive every claim of ``cert`` with the solvers; raise on mismatch."""
    g = cert.graph
    claims = cert.claims
    if "mp" in claims:
        got = mp_exact(g).value
        if got != claims["mp"]:
            raise ValidationFailed(f"{cert.family} {cert.params}: mp is {got}, claimed {claims['mp']}")
    if claims.get("mp_strict") is not None:
        got = mp_exact(g, strict=True).value
        if got != claims["mp_strict"]:
            raise ValidationFailed(f"{cert.family} {cert.params}: strict mp is {got}, claimed {claims['mp_strict']}")
    if claims.get("chi") is not None:
        got = chromatic_number(g)
        if got != claims["chi"]:
            raise ValidationFailed(f"{cert.family} {cert.params}: chi is {got}, claimed {claims['chi']}")
    if claims.get("is_mop"):
        try:
            validate_mop(g)
        except NotMaximalOuterplanar as exc:
            raise ValidationFailed(f"{cert.family} {cert.params}: not a MOP ({exc})") from None
    if claims.get("is_max_planar"):
        if cert.embedding is None or not validate_maxplanar(g, cert.embedding):
            raise ValidationFailed(f"{cert.family} {cert.params}: rotation system is not a triangulation")
    if claims.get("no_regular_edge") and regular_edges(g):
        raise ValidationFailed(f"{cert.family} {cert.params}: regular edges {regular_edges(g)}")


def _certified(cert: ConstructionCert) -> ConstructionCert:
    verify_claims(cert)
    return cert


# ---------------------------------------------------------------------------
# maximal outerplanar families
# ---------------------------------------------------------------------------

def _fan_edges(r: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(1, r - 1)] + [(0, i) for i in range(1, r)]


def gen_fan(n: int) -> ConstructionCert:
    """F_n: the cycle on ``n`` vertices plus every chord from one hub."""
    if n < 4:
        raise ConstructionError("the fan family needs n >= 4")
    g = Graph.from_edges(n, _fan_edges(n))
    return _certified(ConstructionCert(g, "fan", {"n": n}, {"mp": n - 1, "is_mop": True}))


def _attach_ears(r: int, edges: list[tuple[int, int]], feet: Sequence[int]) -> Graph:
    """Add one degree-2 vertex per ``j`` in ``feet``, adjacent to ``v_j`` and ``v_{j+1}``."""
    n = r
    out = list(edges)
    for j in feet:
        if not 1 <= j <= r - 2:
            raise ConstructionError(f"ear position v_{j}, v_{j + 1} is outside the fan")
        out += [(n, j), (n, j + 1)]
        n += 1
    return Graph.from_edges(n, out)


def gen_mop_a(r: int) -> ConstructionCert:
    """F_r with floor(r/3) ears on every third cycle edge; mp = 4."""
    if r < 5:
        raise ConstructionError("mop_a needs r >= 5")
    offset = 2 if r % 3 in (0, 1) else 1
    feet = [3 * i - offset for i in range(1, r // 3 + 1)]
    g = _attach_ears(r, _fan_edges(r), feet)
    return _certified(ConstructionCert(g, "mop_a", {"r": r}, {"mp": 4, "is_mop": True}))


def gen_mop_b_irregular(r: int) -> ConstructionCert:
    """F_r with ears added in adjacent pairs so that no edge is regular; mp = 4."""
    if r < 7:
        raise ConstructionError("mop_b_irregular needs r >= 7")
    q = r // 4
    if r % 4 == 2:
        feet = [j for i in range(1, q + 1) for j in (4 * i - 2, 4 * i - 1)]
    else:
        feet = [j for i in range(1, q + 1) for j in (4 * i - 3, 4 * i - 2)]
        if r % 4 == 3:
            feet.append(r - 2)
    g = _attach_ears(r, _fan_edges(r), feet)
    claims = {"mp": 4, "mp_strict": 4, "is_mop": True, "no_regular_edge": True}
    return _certified(ConstructionCert(g, "mop_b_irregular", {"r": r}, claims))


def validate_mop(g: Graph) -> MopCertificate:
    """Certify ``g`` as maximal outerplanar or raise :class:`NotMaximalOuterplanar`.

    Finds a Hamiltonian cycle whose remaining edges are pairwise non-crossing
    chords; with 2n-3 edges those chords triangulate the polygon.
    """
    n = g.n
    if n < 3:
        raise NotMaximalOuterplanar("order", f"need n >= 3, got {n}")
    if g.num_edges != 2 * n - 3:
        raise NotMaximalOuterplanar("edge-count", f"|E| = {g.num_edges}, need {2 * n - 3}")
    if not is_connected(g):
        raise NotMaximalOuterplanar("connectivity", "graph is disconnected")
    for cycle in _hamiltonian_cycles(g):
        pos = {v: i for i, v in enumerate(cycle)}
        on_cycle = {frozenset((cycle[i], cycle[(i + 1) % n])) for i in range(n)}
        chords = []
        for u, v in g.edges():
            if frozenset((u, v)) not in on_cycle:
                a, b = sorted((pos[u], pos[v]))
                chords.append((a, b))
        if _non_crossing(chords):
            cert = MopCertificate(
                tuple(cycle),
                tuple(sorted(tuple(sorted((cycle[a], cycle[b]))) for a, b in chords)),
            )
            _check_common_neighbours(g, cert)
            return cert
    raise NotMaximalOuterplanar(
        "no-outerplanar-cycle", "no Hamiltonian cycle leaves the other edges non-crossing"
    )


def is_mop(g: Graph) -> bool:
    try:
        validate_mop(g)
    except NotMaximalOuterplanar:
        return False
    return True


def _non_crossing(chords: Sequence[tuple[int, int]]) -> bool:
    for i, (a, b) in enumerate(chords):
        for c, d in chords[i + 1:]:
            if a < c < b < d or c < a < d < b:
                return False
    return True


def _check_common_neighbours(g: Graph, cert: MopCertificate) -> None:
    cyc = cert.hamiltonian_cycle
    n = len(cyc)
    for i in range(n):
        u, v = cyc[i], cyc[(i + 1) % n]
        if (g.adj[u] & g.adj[v]).bit_count() != 1:
            raise NotMaximalOuterplanar("common-neighbour", f"cycle edge {u}{v}")
    for u, v in cert.chords:
        if (g.adj[u] & g.adj[v]).bit_count() != 2:
            raise NotMaximalOuterplanar("common-neighbour", f"chord {u}{v}")


def _hamiltonian_cycles(g: Graph) -> Iterator[list[int]]:
    """Hamiltonian cycles through vertex 0, each in one orientation."""
    n = g.n
    adj = g.adj
    full = (1 << n) - 1
    path = [0]

    def viable(visited: int, end: int) -> bool:
        # every unvisited vertex still needs two usable neighbours
        open_ = (full & ~visited) | (1 << end) | 1
        rest = full & ~visited
        while rest:
            low = rest & -rest
            w = low.bit_length() - 1
            if (adj[w] & open_).bit_count() < 2:
                return False
            rest ^= low
        return True

    def extend(v: int, visited: int) -> Iterator[list[int]]:
        if visited == full:
            if adj[v] & 1 and path[1] < path[-1]:
                yield list(path)
            return
        if not viable(visited, v):
            return
        for u in bits_of(adj[v] & ~visited):
            path.append(u)
            yield from extend(u, visited | (1 << u))
            path.pop()

    if n == 1:
        return
    yield from extend(0, 1)


def mop_triangulations(n: int) -> Iterator[Graph]:
    """Every triangulation of the labeled n-gon ``0, 1, ..., n-1`` (Catalan(n-2) graphs)."""
    if n < 3:
        raise ConstructionError("a polygon needs at least 3 vertices")
    sides = [(i, (i + 1) % n) for i in range(n)]
    for chords in _triangulate(tuple(range(n))):
        yield Graph.from_edges(n, sides + chords)


def _triangulate(poly: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    m = len(poly)
    if m < 3:
        yield []
        return
    a, b = poly[0], poly[-1]
    for j in range(1, m - 1):
        c = poly[j]
        own = []
        if j > 1:
            own.append((a, c))
        if j < m - 2:
            own.append((c, b))
        for left in _triangulate(poly[: j + 1]):
            for right in _triangulate(poly[j:]):
                yield own + left + right


def random_mop(n: int, seed: int) -> Graph:
    """Random triangulated n-gon under a random vertex labelling.

    Splits a random sub-polygon along a random diagonal until only triangles
    remain.  Deterministic for a fixed seed; not uniform over triangulations.
    """
    if n < 3:
        raise ConstructionError("a polygon needs at least 3 vertices")
    rng = random.Random(seed)
    edges = [(i, (i + 1) % n) for i in range(n)]
    pending = [list(range(n))]
    while pending:
        poly = pending.pop(rng.randrange(len(pending)))
        if len(poly) == 3:
            continue
        m = len(poly)
        i = rng.randrange(m)
        j = (i + rng.randrange(2, m - 1)) % m
        i, j = sorted((i, j))
        edges.append((poly[i], poly[j]))
        pending.append(poly[i:j + 1])
        pending.append(poly[j:] + poly[: i + 1])
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph.from_edges(n, edges).relabel(perm)


def check_light_edge(g: Graph) -> bool:
    """An edge with degrees (2, <=3) or a path with degrees (2, 4, 2) exists."""
    degs = g.degrees
    for v in range(g.n):
        if degs[v] != 2:
            continue
        for w in bits_of(g.adj[v]):
            if degs[w] <= 3:
                return True
            if degs[w] == 4 and any(degs[x] == 2 and x != v for x in bits_of(g.adj[w])):
                return True
    return False


# ---------------------------------------------------------------------------
# maximal planar families
# ---------------------------------------------------------------------------

def rotation_from_faces(n: int, faces: Sequence[tuple[int, int, int]]) -> Rotation:
    """Rotation system of a triangulation given consistently oriented triangles.

    Each directed edge must occur in exactly one face; face ``(a, b, c)``
    makes ``c`` follow ``b`` around ``a``.
    """
    succ: list[dict[int, int]] = [{} for _ in range(n)]
    darts = set()
    for face in faces:
        for i in range(3):
            a, b, c = face[i], face[(i + 1) % 3], face[(i + 2) % 3]
            if (a, b) in darts:
                raise RotationError(f"directed edge {a}->{b} occurs in two faces")
            darts.add((a, b))
            succ[a][b] = c
    for a, b in darts:
        if (b, a) not in darts:
            raise RotationError(f"edge {a}{b} borders only one face")
    rotation = []
    for v in range(n):
        if not succ[v]:
            rotation.append(())
            continue
        start = min(succ[v])
        order = [start]
        nxt = succ[v][start]
        while nxt != start:
            order.append(nxt)
            nxt = succ[v][nxt]
        if len(order) != len(succ[v]):
            raise RotationError(f"faces around vertex {v} do not close into a single wheel")
        rotation.append(tuple(order))
    return tuple(rotation)


def trace_faces(g: Graph, rotation: Sequence[Sequence[int]]) -> list[list[int]]:
    """Faces of the embedding given by ``rotation`` (cyclic neighbour order per vertex)."""
    if len(rotation) != g.n:
        raise RotationError("rotation must list every vertex")
    nxt: list[dict[int, int]] = []
    for v, order in enumerate(rotation):
        if len(set(order)) != len(order) or set(order) != set(g.neighbors(v)):
            raise RotationError(f"rotation at vertex {v} does not match its neighbourhood")
        nxt.append({u: order[(i + 1) % len(order)] for i, u in enumerate(order)})
    seen = set()
    faces = []
    for u in range(g.n):
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                a, b = b, nxt[b][a]
            faces.append(face)
    return faces


def validate_maxplanar(g: Graph, rotation: Sequence[Sequence[int]]) -> bool:
    """True iff the rotation is a plane triangulation: Euler holds and every face is a triangle."""
    faces = trace_faces(g, rotation)
    n, m = g.n, g.num_edges
    if n < 3:
        return False
    return n - m + len(faces) == 2 and all(len(f) == 3 for f in faces) and m == 3 * n - 6


def _stack(faces: list[tuple[int, int, int]], face: tuple[int, int, int], u: int) -> None:
    faces.remove(face)
    a, b, c = face
    faces += [(a, b, u), (b, c, u), (c, a, u)]


def gen_maxplanar_1(r: int) -> ConstructionCert:
    """Fan F_r plus an apex ``y`` on the cycle side, stacked degree-3 vertices, and v_1 v_{r-1}.

    Labels: hub 0, ``v_i = i``, ``y = r``, the stacked vertices follow.
    """
    if r < 7 or r % 3 != 1:
        raise ConstructionError("maxplanar_1 needs r >= 7 and r = 1 (mod 3)")
    hub, y = 0, r
    edges = _fan_edges(r)
    edges += [(y, i) for i in range(1, r)]  # every vertex of degree 2 or 3 in F_r
    faces = [(i, i + 1, hub) for i in range(1, r - 1)]
    faces += [(i, y, i + 1) for i in range(1, r - 1)]
    u = r + 1
    for i in range(1, (r - 1) // 3 + 1):
        j = 3 * i - 2
        edges += [(u, y), (u, j), (u, j + 1)]
        _stack(faces, (j, y, j + 1), u)
        u += 1
    edges.append((1, r - 1))
    faces += [(1, hub, r - 1), (y, 1, r - 1)]
    g = Graph.from_edges(u, edges)
    _check_faces_match(g, faces)
    rotation = rotation_from_faces(g.n, faces)
    claims = {"mp": 4, "chi": 4, "is_max_planar": True}
    return _certified(ConstructionCert(g, "maxplanar_1", {"r": r}, claims, rotation))


def gen_maxplanar_2(k: int) -> ConstructionCert:
    """A chain of ``k`` diamonds closed off by three outer vertices.

    Labels: the chain's degree-2/merged vertices ``x_1..x_k, y_k`` are
    ``0..k``; ``z_i = k+i``; ``w_i = 2k+i``; ``v_1, v_2, v_3 = 3k+1, 3k+2, 3k+3``.
    Besides the listed adjacencies, ``v_1`` is joined to ``y_k``: this is the
    one edge missing for a triangulation (the listed edges number 3n-7).
    """
    if k < 3:
        raise ConstructionError("maxplanar_2 needs k >= 3 blocks")
    X = list(range(k + 1))
    z = [None] + [k + i for i in range(1, k + 1)]
    w = [None] + [2 * k + i for i in range(1, k + 1)]
    v1, v2, v3 = 3 * k + 1, 3 * k + 2, 3 * k + 3
    edges = []
    faces = []
    for i in range(1, k + 1):
        a, b = X[i - 1], X[i]
        edges += [(a, z[i]), (z[i], b), (b, w[i]), (w[i], a), (z[i], w[i])]
        faces += [(a, w[i], z[i]), (b, z[i], w[i])]
        faces += [(a, z[i], v2), (z[i], b, v2)]
        faces += [(a, v3, w[i]), (w[i], v3, b)]
    edges += [(v2, x) for x in X] + [(v2, z[i]) for i in range(1, k + 1)]
    edges += [(v3, x) for x in X] + [(v3, w[i]) for i in range(1, k + 1)]
    edges += [(v1, X[0]), (v1, v2), (v1, v3), (v1, X[k])]
    faces += [(X[0], v2, v1), (v3, X[0], v1), (v2, X[k], v1), (X[k], v3, v1)]
    g = Graph.from_edges(3 * k + 4, edges)
    _check_faces_match(g, faces)
    rotation = rotation_from_faces(g.n, faces)
    claims = {"mp": 4, "chi": 4, "is_max_planar": True}
    cert = ConstructionCert(g, "maxplanar_2", {"k": k}, claims, rotation)
    cert.notes.append("v_1 is also joined to y_k to complete the triangulation")
    return _certified(cert)


def _check_faces_match(g: Graph, faces: Sequence[tuple[int, int, int]]) -> None:
    from_faces = {frozenset((f[i], f[(i + 1) % 3])) for f in faces for i in range(3)}
    if from_faces != {frozenset(e) for e in g.edges()}:
        raise ValidationFailed("face list and edge list describe different graphs")


# ---------------------------------------------------------------------------
# multipartite families
# ---------------------------------------------------------------------------

def check_part_sizes(parts: Sequence[int]) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    if not parts:
        raise ConstructionError("need at least one part")
    if parts[0] < 1 or any(a >= b for a, b in zip(parts, parts[1:])):
        raise ConstructionError(f"part sizes must be positive and strictly increasing, got {parts}")
    return parts


def gen_multipartite_distinct(parts: Sequence[int]) -> ConstructionCert:
    """Complete multipartite graph with pairwise distinct part sizes; mp = chi = number of parts."""
    parts = check_part_sizes(parts)
    g = complete_multipartite(parts)
    claims = {"mp": len(parts)}
    if g.n <= CHROMATIC_LIMIT:
        claims["chi"] = len(parts)
    return _certified(ConstructionCert(g, "multipartite_distinct", {"parts": list(parts)}, claims))


def turan_part_sizes(n: int, parts: int) -> list[int]:
    q, extra = divmod(n, parts)
    return [q + 1] * extra + [q] * (parts - extra)


def gen_turan(n: int, k: int) -> ConstructionCert:
    """Balanced complete (k-1)-partite graph on n vertices (the K_k-free Turan graph)."""
    if k < 2 or n < k - 1:
        raise ConstructionError("gen_turan needs n >= k-1 >= 1")
    sizes = turan_part_sizes(n, k - 1)
    g = complete_multipartite(sizes)
    claims: dict[str, Any] = {"mp": mp_exact(g).value}
    if n <= CHROMATIC_LIMIT:
        claims["chi"] = k - 1
    return _certified(ConstructionCert(g, "turan", {"n": n, "k": k}, claims))


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def construct(family: str, params: dict[str, Any]) -> ConstructionCert:
    """Build a certificate from ``(family, params)`` as used by the command line."""
    from . import nordhaus_gaddum as ng

    def need(name: str) -> int:
        if name not in params:
            raise ConstructionError(f"family {family} needs parameter {name}")
        return int(params[name])

    if family == "fan":
        return gen_fan(need("n"))
    if family == "mop_a":
        return gen_mop_a(need("r"))
    if family == "mop_b_irregular":
        return gen_mop_b_irregular(need("r"))
    if family == "maxplanar_1":
        return gen_maxplanar_1(need("r"))
    if family == "maxplanar_2":
        return gen_maxplanar_2(need("k"))
    if family == "multipartite_distinct":
        raw = params.get("parts")
        if raw is None:
            raise ConstructionError("family multipartite_distinct needs parameter parts")
        parts = [int(p) for p in str(raw).replace(",", " ").split()] if not isinstance(raw, list) else raw
        return gen_multipartite_distinct(parts)
    if family == "turan":
        return gen_turan(need("n"), need("k"))
    if family == "ng_cliques":
        return ng.ng_cliques_cert(need("n"))
    if family == "ng_kn_minus_cycle":
        return ng.ng_upper_cert(need("n"))
    raise ConstructionError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
