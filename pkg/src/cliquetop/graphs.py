"""Simple graphs with bitset adjacency rows, and the G(n,p) sampler.

Adjacency is stored as one little-endian bit row per vertex (shape
``(n, words)`` uint64), so neighbourhood intersections, common-neighbour
queries and clique extension all reduce to word operations.

The G(n,p) sampler draws exactly one uniform per vertex pair, indexed by
the pair's colexicographic rank ``v*(v-1)//2 + u`` for ``u < v``.  The
edge is present iff that uniform is below p, which couples samples
monotonically across p for a fixed seed.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterable, Iterator, TextIO

import numpy as np

from .rng import RandomSource

_ONE = np.uint64(1)
_SAMPLE_BLOCK = 1 << 22  # pair draws per vectorized batch


def _word_count(n: int) -> int:
    return max(1, (n + 63) >> 6)


def bit_indices(words: np.ndarray) -> np.ndarray:
    """Sorted positions of set bits in a little-endian word row."""
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")
    return np.nonzero(bits)[0]


def pack_indices(n: int, indices) -> np.ndarray:
    """Word row with the given bit positions set."""
    row = np.zeros(_word_count(n), dtype=np.uint64)
    idx = np.asarray(indices, dtype=np.int64)
    if idx.size:
        if idx.min() < 0 or idx.max() >= n:
            raise ValueError("bit index out of range")
        np.bitwise_or.at(row, idx >> 6, _ONE << (idx.astype(np.uint64) & np.uint64(63)))
    return row


def full_mask(n: int) -> np.ndarray:
    """Row with bits 0..n-1 all set."""
    row = np.zeros(_word_count(n), dtype=np.uint64)
    full, tail = divmod(n, 64)
    row[:full] = ~np.uint64(0)
    if tail:
        row[full] = (_ONE << np.uint64(tail)) - _ONE
    return row


def below_masks(n: int) -> np.ndarray:
    """Array of n+1 rows; row i has bits 0..i-1 set."""
    out = np.zeros((n + 1, _word_count(n)), dtype=np.uint64)
    for i in range(1, n + 1):
        out[i] = out[i - 1]
        out[i, (i - 1) >> 6] |= _ONE << np.uint64((i - 1) & 63)
    return out


def popcount(words: np.ndarray) -> int:
    return int(np.bitwise_count(words).sum())


class Graph:
    """Immutable simple graph on vertex set {0, ..., n-1}."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: np.ndarray):
        if rows.shape != (n, _word_count(n)) or rows.dtype != np.uint64:
            raise ValueError("rows must be (n, words) uint64")
        rows.setflags(write=False)
        self.n = n
        self.rows = rows

    # -- constructors ----------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, np.zeros((n, _word_count(n)), dtype=np.uint64))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = np.zeros((n, _word_count(n)), dtype=np.uint64)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            rows[u, v >> 6] |= _ONE << np.uint64(v & 63)
            rows[v, u >> 6] |= _ONE << np.uint64(u & 63)
        return cls(n, rows)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        rows = np.tile(full_mask(n), (n, 1))
        for v in range(n):
            rows[v, v >> 6] &= ~(_ONE << np.uint64(v & 63))
        return cls(n, rows)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    # -- queries ---------------------------------------------------------

    @property
    def words(self) -> int:
        return self.rows.shape[1]

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.rows[u, v >> 6] >> np.uint64(v & 63)) & _ONE)

    def neighbors(self, v: int) -> np.ndarray:
        return bit_indices(self.rows[v])

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.rows).sum(axis=1).astype(np.int64)

    def edge_count(self) -> int:
        return popcount(self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges (u, v) with u < v, in colexicographic order."""
        below = np.zeros(self.words, dtype=np.uint64)
        for v in range(self.n):
            for u in bit_indices(self.rows[v] & below):
                yield (int(u), v)
            below[v >> 6] |= _ONE << np.uint64(v & 63)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.rows, other.rows))

    def __hash__(self):
        return hash((self.n, self.rows.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"


def generate_gnp(n: int, p: float, rng: RandomSource) -> Graph:
    """Sample an Erdos-Renyi graph G(n, p).

    One uniform per pair, at counter = colex rank of the pair; the edge
    appears iff the uniform is < p.  For a fixed (seed, stream) the edge
    sets are nested as p grows, and p=0 / p=1 give the empty / complete
    graph exactly.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p={p} outside [0, 1]")
    rows = np.zeros((n, _word_count(n)), dtype=np.uint64)
    v = 1
    while v < n:
        # batch whole columns: column v covers pair ranks [v(v-1)/2, v(v+1)/2)
        v_end = v
        start = v * (v - 1) // 2
        while v_end < n and v_end * (v_end + 1) // 2 - start <= _SAMPLE_BLOCK:
            v_end += 1
        if v_end == v:
            v_end = v + 1  # single oversized column, take it alone
        count = v_end * (v_end - 1) // 2 - start
        keep = rng.uniform_block(start, count) < p
        offset = 0
        for col in range(v, v_end):
            us = np.nonzero(keep[offset:offset + col])[0]
            offset += col
            if us.size:
                np.bitwise_or.at(
                    rows[col], us >> 6,
                    _ONE << (us.astype(np.uint64) & np.uint64(63)))
                rows[us, col >> 6] |= _ONE << np.uint64(col & 63)
        v = v_end
    return Graph(n, rows)


# -- neighbourhood checkers ----------------------------------------------


def common_neighbor_all(g: Graph, l: int) -> tuple[bool, tuple[int, ...] | None]:
    """Does every l-subset of vertices have a common neighbour outside itself?

    Returns (True, None) or (False, witness) with the lexicographically
    first failing subset.  DFS over prefixes shares neighbourhood
    intersections; once no vertex outside a prefix is adjacent to all of
    it, every completion of that prefix fails, so the branch resolves
    immediately with its lex-first completion.
    """
    if not (1 <= l <= g.n):
        raise ValueError(f"l={l} outside 1..n={g.n}")
    full = full_mask(g.n)

    def rec(prefix: list[int], pbits: np.ndarray, start: int,
            inter: np.ndarray) -> tuple[int, ...] | None:
        if not np.any(inter & ~pbits):
            need = l - len(prefix)
            return tuple(prefix + list(range(start, start + need)))
        if len(prefix) == l:
            return None
        for v in range(start, g.n - (l - len(prefix)) + 1):
            hit = rec(prefix + [v],
                      pbits | pack_indices(g.n, [v]),
                      v + 1,
                      inter & g.rows[v])
            if hit is not None:
                return hit
        return None

    witness = rec([], np.zeros(g.words, dtype=np.uint64), 0, full)
    return (witness is None), witness


def common_neighborhood(g: Graph, vertices: Iterable[int]) -> np.ndarray:
    """Sorted vertices adjacent to every vertex of the given set, the set
    itself excluded.  Empty input returns all vertices."""
    vs = sorted(set(int(v) for v in vertices))
    inter = full_mask(g.n)
    for v in vs:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
        inter = inter & g.rows[v]
    inter = inter & ~pack_indices(g.n, vs) & full_mask(g.n)
    return bit_indices(inter)


def link_intersection_connected(g: Graph, vertices: Iterable[int]) -> bool:
    """Is the induced subgraph on the common neighbourhood of the set
    nonempty and connected?"""
    members = common_neighborhood(g, vertices)
    if members.size == 0:
        return False
    lbits = pack_indices(g.n, members)
    visited = pack_indices(g.n, [int(members[0])])
    frontier = [int(members[0])]
    while frontier:
        v = frontier.pop()
        fresh = g.rows[v] & lbits & ~visited
        if np.any(fresh):
            ids = bit_indices(fresh)
            visited |= fresh
            frontier.extend(int(i) for i in ids)
    return popcount(visited) == members.size


def connected_components(g: Graph) -> tuple[int, np.ndarray]:
    """(component count, vertex labels 0..count-1 in order of discovery)."""
    labels = np.full(g.n, -1, dtype=np.int64)
    count = 0
    for seed in range(g.n):
        if labels[seed] >= 0:
            continue
        labels[seed] = count
        visited = pack_indices(g.n, [seed])
        frontier = [seed]
        while frontier:
            v = frontier.pop()
            fresh = g.rows[v] & ~visited
            if np.any(fresh):
                ids = bit_indices(fresh)
                visited |= fresh
                labels[ids] = count
                frontier.extend(int(i) for i in ids)
        count += 1
    return count, labels


def k_core(g: Graph, d: int) -> tuple[Graph, np.ndarray]:
    """Maximal induced subgraph with minimum degree >= d.

    Returns (subgraph relabelled to 0..m-1, original vertex ids in
    increasing order).  Peels iteratively; the empty graph comes back
    when nothing survives.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    alive = np.ones(g.n, dtype=bool)
    deg = g.degrees().copy()
    stack = [v for v in range(g.n) if deg[v] < d]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for u in g.neighbors(v):
            if alive[u]:
                deg[u] -= 1
                if deg[u] < d:
                    stack.append(int(u))
    survivors = np.nonzero(alive)[0]
    sub, _ = induced_subgraph(g, survivors)
    return sub, survivors


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the given vertices, relabelled in sorted order.

    Returns (subgraph, sorted original ids); new vertex i corresponds to
    ids[i].
    """
    ids = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if ids.size and (ids[0] < 0 or ids[-1] >= g.n):
        raise ValueError("vertex out of range")
    m = int(ids.size)
    if m == 0:
        return Graph.empty(0), ids
    dense = np.unpackbits(g.rows[ids].view(np.uint8), axis=1, bitorder="little")
    dense = dense[:, ids]  # keep only columns inside the subset
    padded = np.zeros((m, _word_count(m) * 64), dtype=np.uint8)
    padded[:, :m] = dense
    rows = np.packbits(padded, axis=1, bitorder="little").view(np.uint64)
    return Graph(m, rows.copy()), ids


def vertex_link_subgraph(g: Graph, v: int) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the neighbours of v (the link of v in the
    clique complex), with the original neighbour ids."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    return induced_subgraph(g, g.neighbors(v))


# -- plain text edge lists -----------------------------------------------


def write_edge_list(g: Graph, target) -> None:
    """Write "n m" then one "u v" line per edge (u < v, colex order).

    target may be a path or a text file object.
    """
    own, fh = _open_target(target, "w")
    try:
        fh.write(f"{g.n} {g.edge_count()}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")
    finally:
        if own:
            fh.close()


def read_edge_list(source) -> Graph:
    """Read the format produced by write_edge_list.  Lines starting with
    '#' and blank lines are ignored; each edge line must satisfy u < v."""
    own, fh = _open_target(source, "r")
    try:
        header = None
        edges = []
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"malformed line: {raw.rstrip()}")
            a, b = int(parts[0]), int(parts[1])
            if header is None:
                header = (a, b)
                continue
            if a >= b:
                raise ValueError(f"edge ({a},{b}) must satisfy u < v")
            edges.append((a, b))
        if header is None:
            raise ValueError("missing 'n m' header")
        n, m = header
        if len(edges) != m:
            raise ValueError(f"header claims {m} edges, found {len(edges)}")
        return Graph.from_edges(n, edges)
    finally:
        if own:
            fh.close()


def _open_target(target, mode: str) -> tuple[bool, TextIO]:
    if isinstance(target, (str, Path)):
        return True, open(target, mode, encoding="utf-8")
    if isinstance(target, io.TextIOBase) or hasattr(target, "write") or hasattr(target, "read"):
        return False, target
    raise TypeError(f"cannot use {type(target)!r} as a file")
