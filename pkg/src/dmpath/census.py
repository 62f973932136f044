"""Per-mask invariant tables over every labeled graph on n vertices.

Mask bit ``b`` is the vertex pair ``pair_index(n)[b]`` (graph6 column order),
so the complement of ``mask`` is ``full ^ mask``.  Tables are bytearrays
indexed by mask; they are computed once per process and shared by the
exhaustive audits.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .graph import rows_connected, rows_from_mask
from .solver import chromatic_rows, max_clique_rows, mp_rows

EXHAUSTIVE_CAP = 7
FIELDS = ("mp", "chi", "omega", "connected")


def default_workers() -> int:
    return int(os.environ.get("DMPATH_WORKERS", "1"))


@dataclass(frozen=True)
class Census:
    n: int
    tables: dict[str, bytearray]

    @property
    def full(self) -> int:
        return (1 << (self.n * (self.n - 1) // 2)) - 1

    def __getitem__(self, name: str) -> bytearray:
        return self.tables[name]

    def alpha(self, mask: int) -> int:
        return self.tables["omega"][self.full ^ mask]

    def __len__(self) -> int:
        return self.full + 1


def _chunk(n: int, lo: int, hi: int, fields: tuple[str, ...]) -> dict[str, bytearray]:
    out = {f: bytearray(hi - lo) for f in fields}
    want_mp = out.get("mp")
    want_chi = out.get("chi")
    want_omega = out.get("omega")
    want_conn = out.get("connected")
    everyone = (1 << n) - 1
    for i, mask in enumerate(range(lo, hi)):
        adj = rows_from_mask(n, mask)
        if want_mp is not None:
            want_mp[i] = mp_rows(n, adj)
        if want_chi is not None:
            want_chi[i] = chromatic_rows(n, adj)
        if want_omega is not None:
            want_omega[i] = max_clique_rows(adj, everyone)
        if want_conn is not None:
            want_conn[i] = rows_connected(n, adj)
    return out


def compute_census(n: int, fields: tuple[str, ...] = FIELDS, workers: int = 1) -> Census:
    """Fill the requested tables for every labeled graph on ``n`` vertices.

    The mask range is split into contiguous blocks; blocks are merged in index
    order, so the result does not depend on ``workers``.
    """
    if n < 1 or n > EXHAUSTIVE_CAP:
        raise ValueError(f"labeled census supports 1 <= n <= {EXHAUSTIVE_CAP}")
    unknown = set(fields) - set(FIELDS)
    if unknown:
        raise ValueError(f"unknown census fields {sorted(unknown)}")
    total = 1 << (n * (n - 1) // 2)
    if workers <= 1 or total < 4096:
        return Census(n, _chunk(n, 0, total, fields))
    blocks = max(workers * 4, 1)
    size = -(-total // blocks)
    bounds = [(lo, min(lo + size, total)) for lo in range(0, total, size)]
    tables = {f: bytearray() for f in fields}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_chunk, *zip(*((n, lo, hi, fields) for lo, hi in bounds)))
        for part in parts:
            for f in fields:
                tables[f] += part[f]
    return Census(n, tables)


_CACHE: dict[tuple[int, tuple[str, ...]], Census] = {}


def census(n: int, fields: tuple[str, ...] = FIELDS, workers: int | None = None) -> Census:
    """Cached :func:`compute_census`; ``workers`` defaults to the environment's setting."""
    key = (n, tuple(fields))
    if key not in _CACHE:
        _CACHE[key] = compute_census(n, key[1], default_workers() if workers is None else workers)
    return _CACHE[key]
