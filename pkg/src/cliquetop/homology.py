"""Exact reduced homology of stored complexes.

Betti numbers over a prime field come from sparse boundary ranks via
the identity  b~_k = f_k - rank d_k - rank d_{k+1},  with the reduced
convention: the augmentation d_0 into the empty face contributes rank 1
whenever the complex is nonempty, so b~_0 counts components minus one
and the empty complex has b~_{-1} = 1.

Integer homology (rank plus torsion) uses dense Smith normal form and
is size-guarded; it backs the cross-check path when two prime fields
disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._modp import rank_modp
from .complexes import SimplicialComplex
from .graphs import Graph, connected_components

DEFAULT_PRIME = 2_147_483_647
CROSSCHECK_PRIME = 1_000_003

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class SizeGuardError(RuntimeError):
    """An exact integer computation was refused as too large."""


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n below 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class CoefficientSpec:
    """Homology coefficients: a prime field GF(modulus), or the
    integers when modulus is None."""

    modulus: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.modulus is not None:
            if self.modulus < 2 or not is_probable_prime(self.modulus):
                raise ValueError(f"modulus {self.modulus} is not prime")

    @classmethod
    def integers(cls) -> "CoefficientSpec":
        return cls(modulus=None)

    @classmethod
    def prime_field(cls, p: int) -> "CoefficientSpec":
        return cls(modulus=p)

    @property
    def is_field(self) -> bool:
        return self.modulus is not None


@dataclass
class SparseBoundaryMatrix:
    """Boundary operator d_k in CSC layout.

    Column j lists the codimension-1 subfaces of the j-th k-face in
    deletion order: entry i is the face with its i-th smallest vertex
    removed, carrying sign (-1)^i.  Rows are ordinals in dimension k-1.
    """

    k: int
    n_rows: int
    n_cols: int
    col_ptr: np.ndarray
    row_idx: np.ndarray
    signs: np.ndarray

    def column(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        a, b = self.col_ptr[j], self.col_ptr[j + 1]
        return self.row_idx[a:b], self.signs[a:b]

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.int64)
        for j in range(self.n_cols):
            rows, sg = self.column(j)
            out[rows, j] += sg
        return out


def boundary_matrix(X: SimplicialComplex, k: int) -> SparseBoundaryMatrix:
    """The map from k-faces to (k-1)-faces, columns in colex order."""
    if k < 1 or k > X.dim:
        raise ValueError(f"k={k} outside 1..{X.dim}")
    F = X.faces[k]
    m = F.shape[0]
    row_idx = np.empty(m * (k + 1), dtype=np.int64)
    signs = np.empty(m * (k + 1), dtype=np.int8)
    for drop in range(k + 1):
        subs = np.delete(F, drop, axis=1)
        ords = X.ordinals_of(k - 1, subs)
        if np.any(ords < 0):
            raise ValueError("complex is not closed downward")
        row_idx[drop::k + 1] = ords
        signs[drop::k + 1] = 1 if drop % 2 == 0 else -1
    col_ptr = np.arange(0, (m + 1) * (k + 1), k + 1, dtype=np.int64)
    return SparseBoundaryMatrix(k=k, n_rows=X.face_count(k - 1), n_cols=m,
                                col_ptr=col_ptr, row_idx=row_idx, signs=signs)


def _sorted_csc(B: SparseBoundaryMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # entries of every column sorted by row, cheap since widths are k+1
    width = B.k + 1
    rows = B.row_idx.reshape(B.n_cols, width)
    order = np.argsort(rows, axis=1, kind="stable")
    rows_sorted = np.take_along_axis(rows, order, axis=1).reshape(-1)
    signs_sorted = np.take_along_axis(
        B.signs.reshape(B.n_cols, width).astype(np.int64), order, axis=1).reshape(-1)
    return B.col_ptr, rows_sorted, signs_sorted


def _skeleton_rank(X: SimplicialComplex) -> int:
    """rank of d_1 = (stored vertices) - (components of the 1-skeleton),
    which holds over every field."""
    n0 = X.face_count(0)
    if n0 == 0:
        return 0
    if X.face_count(1) == 0:
        return 0
    if X.graph is not None:
        return n0 - connected_components(X.graph)[0]
    ends = X.ordinals_of(0, X.faces[1][:, :1]), X.ordinals_of(0, X.faces[1][:, 1:])
    parent = list(range(n0))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comps = n0
    for a, b in zip(ends[0], ends[1]):
        ra, rb = find(int(a)), find(int(b))
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            comps -= 1
    return n0 - comps


def rank_boundary(X: SimplicialComplex, k: int, prime: int,
                  stop: int | None = None) -> int:
    """Rank of d_k over GF(prime).  k=0 is the augmentation into the
    empty face (rank 1 on nonempty complexes); d_1 uses the component
    count; higher maps run sparse elimination, which aborts early once
    ``stop`` pivots have been found."""
    if k == 0:
        return 1 if X.face_count(0) else 0
    if k > X.dim:
        return 0
    if k == 1:
        return _skeleton_rank(X)
    B = boundary_matrix(X, k)
    col_ptr, rows, vals = _sorted_csc(B)
    return rank_modp(B.n_rows, col_ptr, rows, vals, prime,
                     -1 if stop is None else stop)


@dataclass
class HomologySummary:
    """Reduced Betti numbers by dimension, with exactness flags.

    ``exact[k]`` is False when the complex was cut off at dimension k
    (by the dimension cap or a size guard), in which case ``reduced[k]``
    omits the unknown rank d_{k+1} and is only an upper bound.
    """

    coefficients: CoefficientSpec
    reduced: tuple[int, ...]
    exact: tuple[bool, ...]
    betti_minus_one: int = 0

    @property
    def truncated(self) -> bool:
        return not all(self.exact)


def reduced_betti(X: SimplicialComplex,
                  coefficients: CoefficientSpec | None = None) -> HomologySummary:
    """All stored reduced Betti numbers over a prime field."""
    coeff = coefficients if coefficients is not None else CoefficientSpec()
    if not coeff.is_field:
        raise ValueError("field coefficients required; use integer_homology for Z")
    p = coeff.modulus
    f = X.f_vector()
    top = len(f) - 1
    if top < 0:
        return HomologySummary(coeff, (), (), betti_minus_one=1)
    ranks = np.zeros(top + 2, dtype=np.int64)
    ranks[0] = 1
    if top >= 1:
        ranks[1] = _skeleton_rank(X)
    for k in range(2, top + 1):
        cycles_below = int(f[k - 1] - ranks[k - 1])
        ranks[k] = rank_boundary(X, k, p, stop=cycles_below)
    # rank d_{top+1} is zero exactly when the enumeration saw past top
    reduced = tuple(int(f[k] - ranks[k] - ranks[k + 1]) for k in range(top + 1))
    exact = tuple(bool(X.exhausted or k < top) for k in range(top + 1))
    return HomologySummary(coeff, reduced, exact)


# -- integer backend -----------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    invariant_factors: tuple[int, ...]
    rank: int


def smith_normal_form(matrix, size_limit: int | None = None) -> SNFResult:
    """Invariant factors of an integer matrix (positive, divisibility
    chain d_1 | d_2 | ...), by dense elimination over Python ints."""
    if isinstance(matrix, SparseBoundaryMatrix):
        dense = matrix.to_dense()
    else:
        dense = np.asarray(matrix)
    if dense.ndim != 2:
        raise ValueError("matrix must be 2-dimensional")
    R, C = dense.shape
    if size_limit is not None and max(R, C) > size_limit:
        raise SizeGuardError(f"matrix {R}x{C} exceeds size limit {size_limit}")
    A = [[int(v) for v in row] for row in dense]
    factors: list[int] = []
    t = 0
    while t < min(R, C):
        # smallest nonzero entry of the working block becomes the pivot
        best = None
        for i in range(t, R):
            for j in range(t, C):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        A[t], A[bi] = A[bi], A[t]
        for row in A:
            row[t], row[bj] = row[bj], row[t]
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
        while True:
            dirty = False
            for i in range(t + 1, R):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        if A[t][t] < 0:
                            A[t] = [-v for v in A[t]]
                        dirty = True
            for j in range(t + 1, C):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        if A[t][t] < 0:
                            A[t] = [-v for v in A[t]]
                        dirty = True
            if dirty:
                continue
            if any(A[i][t] for i in range(t + 1, R)):
                continue
            break
        # pivot must divide everything that remains
        d = A[t][t]
        fixup = None
        for i in range(t + 1, R):
            for j in range(t + 1, C):
                if A[i][j] % d:
                    fixup = i
                    break
            if fixup is not None:
                break
        if fixup is not None:
            A[t] = [a + b for a, b in zip(A[t], A[fixup])]
            continue
        factors.append(d)
        t += 1
    return SNFResult(tuple(factors), len(factors))


@dataclass(frozen=True)
class IntegerHomology:
    rank: int
    torsion: tuple[int, ...]


def integer_homology(X: SimplicialComplex, k: int,
                     face_limit: int = 2000) -> IntegerHomology:
    """Rank and torsion of the reduced k-th homology over Z, refusing
    instances with more than face_limit faces in any involved dimension."""
    if k < 0:
        raise ValueError("k must be >= 0")
    for d in (k - 1, k, k + 1):
        if X.face_count(d) > face_limit:
            raise SizeGuardError(
                f"{X.face_count(d)} faces in dimension {d} exceed limit {face_limit}")
    if k > X.dim:
        if not X.exhausted:
            raise ValueError("complex truncated below requested dimension")
        return IntegerHomology(0, ())
    if not X.exhausted and k >= X.dim:
        raise ValueError(f"dimension {k} is truncated; homology there is not exact")
    f_k = X.face_count(k)
    if k == 0:
        rank_k = 1 if f_k else 0
    else:
        rank_k = smith_normal_form(boundary_matrix(X, k)).rank
    if k + 1 > X.dim:
        rank_up = 0
        torsion: tuple[int, ...] = ()
    else:
        snf_up = smith_normal_form(boundary_matrix(X, k + 1))
        rank_up = snf_up.rank
        torsion = tuple(d for d in snf_up.invariant_factors if d > 1)
    return IntegerHomology(int(f_k - rank_k - rank_up), torsion)


# -- consistency identities ----------------------------------------------


def euler_check(f_vector: Sequence[int], summary: HomologySummary) -> bool | None:
    """Alternating sums of face counts and (unreduced) Betti numbers
    must agree.  Returns None (skipped) when the summary is truncated
    or empty."""
    f = tuple(int(v) for v in f_vector)
    if len(f) == 0 or len(summary.reduced) != len(f) or summary.truncated:
        return None
    chi_f = sum((-1) ** i * f[i] for i in range(len(f)))
    unreduced = (summary.reduced[0] + 1,) + summary.reduced[1:]
    chi_b = sum((-1) ** i * unreduced[i] for i in range(len(unreduced)))
    return chi_f == chi_b


def morse_inequality_check(f_vector: Sequence[int], summary: HomologySummary,
                           k: int) -> bool | None:
    """-f_{k-1} + f_k - f_{k+1} <= b~_k <= f_k, with f_{-1} = 1 for the
    empty face.  None when b~_k is not exact."""
    f = tuple(int(v) for v in f_vector)
    if k < 0 or k >= len(summary.reduced) or not summary.exact[k]:
        return None

    def fv(i: int) -> int:
        if i == -1:
            return 1
        if 0 <= i < len(f):
            return f[i]
        return 0

    b = summary.reduced[k]
    return (-fv(k - 1) + fv(k) - fv(k + 1)) <= b <= fv(k)


# -- dual-route verification ---------------------------------------------


@dataclass
class CrosscheckReport:
    summaries: tuple[HomologySummary, HomologySummary]
    agreed: bool
    integer_checks: dict[int, IntegerHomology]
    skipped_dims: tuple[int, ...]


def betti_crosscheck(X: SimplicialComplex,
                     primes: tuple[int, int] = (DEFAULT_PRIME, CROSSCHECK_PRIME),
                     face_limit: int = 2000) -> CrosscheckReport:
    """Betti numbers over two prime fields; any disagreeing dimension is
    settled over the integers when the size guard allows."""
    s1 = reduced_betti(X, CoefficientSpec.prime_field(primes[0]))
    s2 = reduced_betti(X, CoefficientSpec.prime_field(primes[1]))
    agreed = s1.reduced == s2.reduced
    checks: dict[int, IntegerHomology] = {}
    skipped: list[int] = []
    if not agreed:
        for k, (a, b) in enumerate(zip(s1.reduced, s2.reduced)):
            if a != b and s1.exact[k]:
                try:
                    checks[k] = integer_homology(X, k, face_limit=face_limit)
                except SizeGuardError:
                    skipped.append(k)
    return CrosscheckReport((s1, s2), agreed, checks, tuple(skipped))
