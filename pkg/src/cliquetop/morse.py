"""Discrete vector fields on stored complexes.

Two constructions: the lexicographic gradient field (pair a k-face with
its extension by the least admissible vertex above its maximum) and the
random matching (each k-face proposes dropping a uniformly chosen
vertex, then conflicts and closed V-paths are repaired away).  Critical
cell counts bound Betti numbers from above; acyclicity is verified by
cycle detection on the V-path digraph rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import SimplicialComplex
from .graphs import below_masks, full_mask
from .rng import RandomSource


class MalformedFieldError(ValueError):
    """A pair violates the matching structure (reuse or wrong codimension)."""


@dataclass
class DiscreteVectorField:
    """A partial matching of lower_dim-faces with (lower_dim+1)-faces.

    pairs[:, 0] are lower ordinals, pairs[:, 1] upper ordinals, sorted
    by lower ordinal.  Faces of the two dimensions not appearing in any
    pair are listed as critical; faces of other dimensions are
    implicitly critical.
    """

    lower_dim: int
    pairs: np.ndarray
    critical_lower: np.ndarray
    critical_upper: np.ndarray
    strategy: str

    @property
    def pair_count(self) -> int:
        return int(self.pairs.shape[0])


@dataclass
class RepairReport:
    """Accounting for random_matching_field: every upper face proposes
    one pair; conflicts and V-path cycles knock some out."""

    proposed: int
    conflict_dropped: int
    cycle_dropped: int

    @property
    def removed(self) -> int:
        return self.conflict_dropped + self.cycle_dropped


def _require_upper_dim_known(X: SimplicialComplex, d: int) -> None:
    # pairing against dimension d needs that dimension fully enumerated
    if d <= X.dim or X.exhausted:
        return
    raise ValueError(
        f"dimension {d} was cut off (cap or size guard); field would be wrong")


def lex_gradient_field(X: SimplicialComplex, k: int) -> DiscreteVectorField:
    """Pair each k-face a with a ∪ {x} for the least x > max(a) forming a
    face; a is critical iff no such x exists.

    Uniqueness of partners is structural: the (k+1)-face b = a ∪ {x}
    with x > max(a) determines a as b minus its own maximum, so scanning
    (k+1)-faces in colex order and keeping the first claim per parent
    realizes exactly the least-x rule.
    """
    if k < 0 or k > X.dim:
        raise ValueError(f"k={k} outside 0..{X.dim}")
    _require_upper_dim_known(X, k + 1)
    m = X.face_count(k)
    partner = np.full(m, -1, dtype=np.int64)
    if k + 1 <= X.dim and X.face_count(k + 1):
        U = X.faces[k + 1]
        parent_ords = X.ordinals_of(k, U[:, :-1])
        for j in range(U.shape[0]):
            a = int(parent_ords[j])
            if partner[a] < 0:
                partner[a] = j
    lowers = np.nonzero(partner >= 0)[0].astype(np.int64)
    pairs = np.column_stack([lowers, partner[lowers]]) if lowers.size else \
        np.empty((0, 2), dtype=np.int64)
    used_upper = set(int(j) for j in partner[partner >= 0])
    n_upper = X.face_count(k + 1)
    critical_upper = np.array(
        [j for j in range(n_upper) if j not in used_upper], dtype=np.int64)
    critical_lower = np.nonzero(partner < 0)[0].astype(np.int64)
    return DiscreteVectorField(k, pairs, critical_lower, critical_upper, "lex")


def lex_critical_faces(X: SimplicialComplex, k: int) -> np.ndarray:
    """Ordinals of lex-critical k-faces by the direct criterion: no
    vertex above the face's maximum extends it.  Independent of
    lex_gradient_field; the two must agree on every instance."""
    if k < 0 or k > X.dim:
        raise ValueError(f"k={k} outside 0..{X.dim}")
    _require_upper_dim_known(X, k + 1)
    F = X.faces[k]
    out = []
    if X.graph is not None:
        g = X.graph
        below = below_masks(g.n)
        full = full_mask(g.n)
        for i in range(F.shape[0]):
            face = F[i]
            inter = full ^ below[int(face[-1]) + 1]  # candidates above max
            for v in face:
                inter = inter & g.rows[v]
            if not np.any(inter):
                out.append(i)
    else:
        idx_up = X.index(k + 1) if k + 1 <= X.dim else {}
        for i in range(F.shape[0]):
            face = tuple(int(v) for v in F[i])
            if not any(face + (x,) in idx_up
                       for x in range(face[-1] + 1, X.n_vertices)):
                out.append(i)
    return np.array(out, dtype=np.int64)


def random_matching_field(X: SimplicialComplex, k: int,
                          rng: RandomSource) -> tuple[DiscreteVectorField, RepairReport]:
    """Every k-face proposes the pair (itself minus a uniformly chosen
    vertex, itself); the proposals are repaired to a gradient field.

    Repair is deterministic given the seed: proposals are scanned in
    colex order of the k-face and the first claim on a (k-1)-face wins;
    then any closed V-path is broken by dropping the pair whose k-face
    has the largest colex rank on the cycle, until none remain.
    """
    if k < 1 or k > X.dim:
        raise ValueError(f"k={k} outside 1..{X.dim}")
    F = X.faces[k]
    m = F.shape[0]
    cur = rng.cursor()
    drops = np.array([cur.randint(k + 1) for _ in range(m)], dtype=np.int64)
    lower_ords = np.empty(m, dtype=np.int64)
    for d in range(k + 1):
        sel = np.nonzero(drops == d)[0]
        if sel.size:
            lower_ords[sel] = X.ordinals_of(k - 1, np.delete(F[sel], d, axis=1))
    claimed: dict[int, int] = {}
    conflict_dropped = 0
    for tau in range(m):
        lo = int(lower_ords[tau])
        if lo in claimed:
            conflict_dropped += 1
        else:
            claimed[lo] = tau
    cycle_dropped = 0
    while True:
        cycle = _find_cycle(X, k, claimed)
        if cycle is None:
            break
        victim = max(cycle, key=lambda lo: claimed[lo])
        del claimed[victim]
        cycle_dropped += 1
    lowers = np.array(sorted(claimed), dtype=np.int64)
    uppers = np.array([claimed[lo] for lo in lowers], dtype=np.int64)
    pairs = np.column_stack([lowers, uppers]) if lowers.size else \
        np.empty((0, 2), dtype=np.int64)
    crit_lower = np.setdiff1d(np.arange(X.face_count(k - 1), dtype=np.int64), lowers)
    crit_upper = np.setdiff1d(np.arange(m, dtype=np.int64), uppers)
    field = DiscreteVectorField(k - 1, pairs, crit_lower, crit_upper, "random")
    report = RepairReport(proposed=m, conflict_dropped=conflict_dropped,
                          cycle_dropped=cycle_dropped)
    return field, report


def _pair_arcs(X: SimplicialComplex, upper_dim: int,
               claimed: dict[int, int]) -> dict[int, list[int]]:
    """V-path digraph on pairs, keyed by lower ordinal: an arc goes to
    every other pair whose lower face sits inside this pair's upper
    face."""
    if not claimed:
        return {}
    lowers = sorted(claimed)
    F = X.faces[upper_dim]
    sel = np.array([claimed[lo] for lo in lowers], dtype=np.int64)
    arcs: dict[int, list[int]] = {lo: [] for lo in lowers}
    subs_by_drop = []
    for d in range(upper_dim + 1):
        subs_by_drop.append(X.ordinals_of(upper_dim - 1, np.delete(F[sel], d, axis=1)))
    for i, lo in enumerate(lowers):
        for d in range(upper_dim + 1):
            nxt = int(subs_by_drop[d][i])
            if nxt != lo and nxt in claimed:
                arcs[lo].append(nxt)
    return arcs


def _find_cycle(X: SimplicialComplex, upper_dim: int,
                claimed: dict[int, int]) -> list[int] | None:
    """First cycle of the V-path digraph in DFS order, as lower
    ordinals, or None when acyclic."""
    arcs = _pair_arcs(X, upper_dim, claimed)
    color = {lo: 0 for lo in arcs}  # 0 fresh, 1 on stack, 2 done
    for root in sorted(arcs):
        if color[root]:
            continue
        stack = [(root, iter(arcs[root]))]
        color[root] = 1
        path = [root]
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 1:
                    return path[path.index(nxt):]
                if color[nxt] == 0:
                    color[nxt] = 1
                    path.append(nxt)
                    stack.append((nxt, iter(arcs[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                path.pop()
                stack.pop()
    return None


def verify_acyclic(V: DiscreteVectorField, X: SimplicialComplex) -> bool:
    """Validate the matching structure and check for closed V-paths.

    Structural violations (a face in two pairs, or a pair that is not a
    codimension-1 containment) raise MalformedFieldError; the return
    value reports acyclicity only.
    """
    k = V.lower_dim
    pairs = V.pairs
    if pairs.shape[0] == 0:
        return True
    if k < 0 or k + 1 > X.dim:
        raise MalformedFieldError("pair dimensions outside stored complex")
    los = pairs[:, 0]
    ups = pairs[:, 1]
    if np.unique(los).size != los.size or np.unique(ups).size != ups.size:
        raise MalformedFieldError("a face appears in two pairs")
    if los.min() < 0 or los.max() >= X.face_count(k) or \
            ups.min() < 0 or ups.max() >= X.face_count(k + 1):
        raise MalformedFieldError("pair ordinal out of range")
    for lo, up in pairs:
        a = set(int(v) for v in X.faces[k][int(lo)])
        b = set(int(v) for v in X.faces[k + 1][int(up)])
        if not (a < b and len(b - a) == 1):
            raise MalformedFieldError(
                f"pair ({int(lo)},{int(up)}) is not a codimension-1 containment")
    claimed = {int(lo): int(up) for lo, up in pairs}
    return _find_cycle(X, k + 1, claimed) is None


def critical_count(V: DiscreteVectorField, X: SimplicialComplex, k: int) -> int:
    """Number of critical k-faces of a verified gradient field; this
    bounds the k-th Betti number above.  Refuses non-gradient fields."""
    if not verify_acyclic(V, X):
        raise ValueError("field has a closed V-path; critical counts would not bound Betti numbers")
    if k == V.lower_dim:
        return int(V.critical_lower.size)
    if k == V.lower_dim + 1:
        return int(V.critical_upper.size)
    return X.face_count(k)  # untouched dimensions: everything is critical


def adjacent_kface_pairs(X: SimplicialComplex, k: int) -> int:
    """Unordered pairs of k-faces sharing a (k-1)-face.  For k=0 every
    two vertices share the empty face."""
    if k < 0 or k > X.dim:
        raise ValueError(f"k={k} outside 0..{X.dim}")
    m = X.face_count(k)
    if k == 0:
        return m * (m - 1) // 2
    F = X.faces[k]
    counts = np.zeros(X.face_count(k - 1), dtype=np.int64)
    for d in range(k + 1):
        ords = X.ordinals_of(k - 1, np.delete(F, d, axis=1))
        counts += np.bincount(ords, minlength=counts.size)
    return int((counts * (counts - 1) // 2).sum())
