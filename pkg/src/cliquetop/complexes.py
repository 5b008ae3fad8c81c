"""Simplicial complexes: clique complexes of graphs, capped at a
dimension, and generic complexes closed downward from facet lists.

Faces of each dimension d are stored as an (f_d, d+1) int32 array with
vertices increasing along a row and rows in colexicographic order (last
vertex most significant).  That order is the contract every downstream
consumer relies on: boundary matrices enumerate columns in it, Morse
pairings scan in it, and ordinal ids appearing in records refer to it.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph, below_masks, bit_indices, full_mask

_FACET_SIZE_LIMIT = 25


class ComplexTooLargeError(RuntimeError):
    """Raised when a facet expansion would exceed hard size limits."""


def _colex_sorted(rows: np.ndarray) -> np.ndarray:
    """Rows sorted colexicographically (last column is most significant)."""
    if rows.shape[0] <= 1:
        return rows
    order = np.lexsort(tuple(rows[:, j] for j in range(rows.shape[1])))
    return rows[order]


def _colex_keys(rows: np.ndarray, n: int) -> np.ndarray | None:
    """Base-n packing of each face; numeric order equals colex order.
    None when the packed key would not fit in an int64."""
    width = rows.shape[1]
    if n <= 1:
        n = 2
    if width * np.log2(n) > 62:
        return None
    key = np.zeros(rows.shape[0], dtype=np.int64)
    mult = 1
    for j in range(width):
        key += rows[:, j].astype(np.int64) * mult
        mult *= n
    return key


class SimplicialComplex:
    """Faces by dimension, colex-ordered, with ordinal lookup."""

    __slots__ = ("faces", "graph", "max_dim", "complete", "exhausted",
                 "truncated_dim", "n_vertices", "_keys", "_index")

    def __init__(self, faces: list[np.ndarray], *, graph: Graph | None,
                 max_dim: int, complete: bool, exhausted: bool,
                 truncated_dim: int | None, n_vertices: int):
        self.faces = faces
        self.graph = graph
        self.max_dim = max_dim
        self.complete = complete
        self.exhausted = exhausted
        self.truncated_dim = truncated_dim
        self.n_vertices = n_vertices
        self._keys: dict[int, np.ndarray | None] = {}
        self._index: dict[int, dict[tuple, int]] = {}

    # -- basic queries ---------------------------------------------------

    @property
    def dim(self) -> int:
        """Top dimension with at least one stored face (-1 when empty)."""
        for d in range(len(self.faces) - 1, -1, -1):
            if self.faces[d].shape[0]:
                return d
        return -1

    def f_vector(self) -> tuple[int, ...]:
        top = self.dim
        return tuple(int(self.faces[d].shape[0]) for d in range(top + 1))

    def face_count(self, d: int) -> int:
        if 0 <= d < len(self.faces):
            return int(self.faces[d].shape[0])
        return 0

    def face(self, d: int, ordinal: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.faces[d][ordinal])

    def index(self, d: int) -> dict[tuple, int]:
        """Face tuple -> ordinal map for dimension d (built lazily)."""
        if d not in self._index:
            arr = self.faces[d] if 0 <= d < len(self.faces) else np.empty((0, d + 1), np.int32)
            self._index[d] = {tuple(int(v) for v in row): i for i, row in enumerate(arr)}
        return self._index[d]

    def has_face(self, vertices: Sequence[int]) -> bool:
        t = tuple(sorted(int(v) for v in vertices))
        d = len(t) - 1
        if d < 0 or d >= len(self.faces):
            return False
        return t in self.index(d)

    def ordinals_of(self, d: int, queries: np.ndarray) -> np.ndarray:
        """Ordinals of the query faces in dimension d; -1 where absent.

        queries is (m, d+1) with sorted rows.  Uses packed-key binary
        search when the key fits an int64, otherwise the dict index.
        """
        queries = np.asarray(queries, dtype=np.int32)
        if queries.ndim != 2 or queries.shape[1] != d + 1:
            raise ValueError("queries must be (m, d+1)")
        if d < 0 or d >= len(self.faces) or self.faces[d].shape[0] == 0:
            return np.full(queries.shape[0], -1, dtype=np.int64)
        if d not in self._keys:
            self._keys[d] = _colex_keys(self.faces[d], self.n_vertices)
        keys = self._keys[d]
        if keys is None:
            idx = self.index(d)
            return np.array([idx.get(tuple(int(v) for v in row), -1) for row in queries],
                            dtype=np.int64)
        qk = _colex_keys(queries, self.n_vertices)
        pos = np.searchsorted(keys, qk)
        pos_c = np.minimum(pos, keys.size - 1)
        found = keys[pos_c] == qk
        return np.where(found, pos_c, -1).astype(np.int64)


def build_clique_complex(g: Graph, max_dim: int,
                         max_faces_per_dim: int | None = None) -> SimplicialComplex:
    """All cliques of g with at most max_dim+1 vertices, as a complex.

    Enumeration is by ordered extension: a clique keeps the bitset of
    common neighbours above its maximum vertex, and each set bit spawns
    one child, so every clique is produced exactly once.  If some
    dimension would exceed ``max_faces_per_dim`` the build stops before
    materializing it and the complex is marked truncated.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    n = g.n
    faces = [np.arange(n, dtype=np.int32).reshape(n, 1)]
    complete = True
    truncated_dim = None
    if n and max_dim >= 1:
        below = below_masks(n)
        full = full_mask(n)
        gt = full[None, :] ^ below[1:]          # gt[v]: bits v+1 .. n-1
        cand = (g.rows & gt).copy()             # extension sets per current face
        for d in range(1, max_dim + 1):
            counts = np.bitwise_count(cand).sum(axis=1).astype(np.int64)
            total = int(counts.sum())
            if total == 0:
                break
            if max_faces_per_dim is not None and total > max_faces_per_dim:
                complete = False
                truncated_dim = d
                break
            prev = faces[d - 1]
            new_faces = np.empty((total, d + 1), dtype=np.int32)
            new_cand = np.empty((total, cand.shape[1]), dtype=np.uint64)
            pos = 0
            for i in range(prev.shape[0]):
                m = int(counts[i])
                if m == 0:
                    continue
                xs = bit_indices(cand[i])
                new_faces[pos:pos + m, :d] = prev[i]
                new_faces[pos:pos + m, d] = xs
                new_cand[pos:pos + m] = cand[i][None, :] & g.rows[xs] & gt[xs]
                pos += m
            order = np.lexsort(tuple(new_faces[:, j] for j in range(d + 1)))
            faces.append(new_faces[order])
            cand = new_cand[order]
    top = len(faces) - 1
    exhausted = complete and (
        (faces[top].shape[0] == 0) or top < max_dim or max_dim >= n - 1)
    return SimplicialComplex(faces, graph=g, max_dim=max_dim, complete=complete,
                             exhausted=exhausted, truncated_dim=truncated_dim,
                             n_vertices=n)


def from_facets(facets: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Downward closure of the given faces, as a complex.

    Facet size is capped (closure is exponential in it); vertices are
    arbitrary nonnegative ints, the vertex set being whatever appears.
    """
    by_dim: dict[int, set] = {}
    for f in facets:
        t = tuple(sorted(int(v) for v in f))
        if len(t) == 0:
            continue
        if len(set(t)) != len(t):
            raise ValueError(f"repeated vertex in face {t}")
        if t[0] < 0:
            raise ValueError("negative vertex id")
        if len(t) > _FACET_SIZE_LIMIT:
            raise ComplexTooLargeError(
                f"facet with {len(t)} vertices; closure limit is {_FACET_SIZE_LIMIT}")
        for r in range(1, len(t) + 1):
            bucket = by_dim.setdefault(r - 1, set())
            for c in combinations(t, r):
                bucket.add(c)
    if not by_dim:
        return SimplicialComplex([np.empty((0, 1), np.int32)], graph=None,
                                 max_dim=0, complete=True, exhausted=True,
                                 truncated_dim=None, n_vertices=0)
    top = max(by_dim)
    n_vertices = max(v for c in by_dim[0] for v in c) + 1
    faces = []
    for d in range(top + 1):
        arr = np.array(sorted(by_dim[d]), dtype=np.int32).reshape(len(by_dim[d]), d + 1)
        faces.append(_colex_sorted(arr))
    return SimplicialComplex(faces, graph=None, max_dim=top, complete=True,
                             exhausted=True, truncated_dim=None,
                             n_vertices=n_vertices)


# -- connectivity of the k-skeleton --------------------------------------


@dataclass(frozen=True)
class StrongComponent:
    """A class of k-faces chained by shared (k-1)-faces."""
    ordinals: np.ndarray
    support_size: int


def strongly_connected_components(X: SimplicialComplex, k: int) -> list[StrongComponent]:
    """Partition of the k-faces into classes where consecutive faces
    share a (k-1)-face, with the vertex-support size of each class.
    Classes come back ordered by smallest ordinal."""
    if k < 0 or k > X.dim:
        raise ValueError(f"k={k} outside 0..{X.dim}")
    F = X.faces[k]
    m = F.shape[0]
    if k == 0:
        # every pair of vertices shares the empty face
        return [StrongComponent(np.arange(m, dtype=np.int64), m)] if m else []
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    first_seen: dict[int, int] = {}
    for drop in range(k + 1):
        subs = np.delete(F, drop, axis=1)
        ords = X.ordinals_of(k - 1, subs)
        for i in range(m):
            o = int(ords[i])
            if o in first_seen:
                union(first_seen[o], i)
            else:
                first_seen[o] = i
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    out = []
    for root in sorted(groups):
        members = np.array(groups[root], dtype=np.int64)
        support = int(np.unique(F[members].ravel()).size)
        out.append(StrongComponent(members, support))
    return out


def vertex_link_subgraph(g: Graph, v: int):
    """Link of a vertex in the clique complex of g, as a graph on the
    neighbours of v (re-exported convenience)."""
    from .graphs import vertex_link_subgraph as _impl
    return _impl(g, v)


# -- facet lists on disk -------------------------------------------------


def maximal_faces(X: SimplicialComplex) -> list[tuple[int, ...]]:
    """Faces not contained in any other stored face, dimension ascending
    and colex within a dimension."""
    covered = [np.zeros(X.face_count(d), dtype=bool) for d in range(X.dim + 1)]
    for d in range(1, X.dim + 1):
        F = X.faces[d]
        if not F.shape[0]:
            continue
        for drop in range(d + 1):
            subs = np.delete(F, drop, axis=1)
            ords = X.ordinals_of(d - 1, subs)
            covered[d - 1][ords[ords >= 0]] = True
    out = []
    for d in range(X.dim + 1):
        for i in np.nonzero(~covered[d])[0]:
            out.append(X.face(d, int(i)))
    return out


def write_facet_list(X: SimplicialComplex, target) -> None:
    """One maximal face per line, space-separated vertex ids."""
    from .graphs import _open_target
    own, fh = _open_target(target, "w")
    try:
        for f in maximal_faces(X):
            fh.write(" ".join(str(v) for v in f) + "\n")
    finally:
        if own:
            fh.close()


def read_facet_list(source) -> SimplicialComplex:
    """Read faces one per line and close them downward.  '#' comments
    and blank lines are ignored."""
    from .graphs import _open_target
    own, fh = _open_target(source, "r")
    try:
        facets = []
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            facets.append([int(tok) for tok in line.split()])
        return from_facets(facets)
    finally:
        if own:
            fh.close()


def load_fixture(name: str) -> SimplicialComplex:
    """Bundled facet-list fixture by bare name (e.g. "rp2_6")."""
    path = resources.files("cliquetop").joinpath(f"data/{name}.facets")
    return read_facet_list(io.StringIO(path.read_text(encoding="utf-8")))
