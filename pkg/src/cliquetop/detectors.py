"""Structural certificates for Betti numbers of clique complexes.

A sphere certificate names k+1 disjoint vertex pairs inducing the
cocktail-party graph (complement of a perfect matching) such that the
chosen u-side has no common neighbour and every outside vertex misses
both ends of some pair.  Such a set lets the clique complex retract
onto an octahedral k-sphere, forcing b~_k >= 1.

The external-vertex condition here is deliberately stronger than
"y is non-adjacent to some u_i": if y were sent to u_i while adjacent
to v_i, the edge {y, v_i} would map to the non-edge {u_i, v_i} and the
map would not be simplicial.  Requiring y to miss both u_i and v_i
makes the least-index extension simplicial, and verify_retraction
checks that explicitly on every host edge rather than trusting it.

Vanishing certificates are one-sided: fewer than 2k+2 vertices, or an
empty 2k-core, each force b~_k = 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import (
    Graph,
    bit_indices,
    common_neighborhood,
    full_mask,
    k_core,
    pack_indices,
    popcount,
)
from .rng import RandomSource

_PAIR_ATTEMPTS_PER_RESTART = 256


class CertificateError(ValueError):
    """A certificate failed validation; the message names the clause."""


@dataclass(frozen=True)
class SphereCertificate:
    """Vertex pairs (u_i, v_i) spanning an induced octahedral sphere."""

    k: int
    u: tuple[int, ...]
    v: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.u + self.v))

    def to_json(self) -> dict:
        return {"k": self.k, "u": list(self.u), "v": list(self.v)}

    @classmethod
    def from_json(cls, obj) -> "SphereCertificate":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["k"]), tuple(int(x) for x in obj["u"]),
                   tuple(int(x) for x in obj["v"]))


@dataclass(frozen=True)
class RetractionMap:
    """Total vertex map onto the certificate's support."""

    assignment: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.assignment[x]

    def to_json(self) -> dict:
        return {"assignment": list(self.assignment)}


@dataclass(frozen=True)
class VanishingVerdict:
    guaranteed_zero: bool
    reason: str | None


def octahedral_skeleton(k: int) -> Graph:
    """1-skeleton of the octahedral k-sphere: 2(k+1) vertices, all edges
    except the perfect matching {i, i+(k+1)}."""
    if k < 0:
        raise ValueError("k must be >= 0")
    n = 2 * (k + 1)
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)
             if b - a != k + 1]
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class DensityInfo:
    density: Fraction
    exponent: Fraction


def density_exponent(k: int) -> DensityInfo:
    """Edge/vertex density of the octahedral skeleton (equals k) and the
    resulting appearance-threshold exponent -1/k."""
    if k < 1:
        raise ValueError("k=0 sphere skeleton is edgeless; density is degenerate")
    vertices = 2 * (k + 1)
    edges = vertices * (vertices - 1) // 2 - (k + 1)
    density = Fraction(edges, vertices)
    assert density == k
    return DensityInfo(density, Fraction(-1, k))


def check_certificate(g: Graph, cert: SphereCertificate) -> None:
    """Raise CertificateError naming the first violated clause."""
    k = cert.k
    if k < 0 or len(cert.u) != k + 1 or len(cert.v) != k + 1:
        raise CertificateError("certificate lists must each hold k+1 vertices")
    support = cert.u + cert.v
    if len(set(support)) != 2 * (k + 1):
        raise CertificateError("certificate vertices are not distinct")
    if min(support) < 0 or max(support) >= g.n:
        raise CertificateError("certificate vertex outside the host graph")
    for i in range(k + 1):
        if g.adjacent(cert.u[i], cert.v[i]):
            raise CertificateError(
                f"matched pair (u_{i}, v_{i}) = ({cert.u[i]}, {cert.v[i]}) is an edge")
    for i in range(k + 1):
        for j in range(k + 1):
            if i == j:
                continue
            for a, b in [(cert.u[i], cert.u[j]), (cert.u[i], cert.v[j]),
                         (cert.v[i], cert.v[j])]:
                if a != b and not g.adjacent(a, b):
                    raise CertificateError(
                        f"cross pair ({a}, {b}) is missing from the induced subgraph")
    if common_neighborhood(g, cert.u).size:
        w = int(common_neighborhood(g, cert.u)[0])
        raise CertificateError(f"u-set has a common neighbor ({w})")
    sbits = pack_indices(g.n, support)
    violators = full_mask(g.n) & ~sbits
    for i in range(k + 1):
        violators = violators & (g.rows[cert.u[i]] | g.rows[cert.v[i]])
        if not np.any(violators):
            break
    if np.any(violators):
        y = int(bit_indices(violators)[0])
        raise CertificateError(
            f"external vertex {y} is adjacent into every matched pair")


def _viable_first_pairs(g: Graph, k: int) -> list[tuple[int, int]]:
    # non-edges whose common neighbourhood can still host the other k pairs
    need = 2 * k
    out = []
    full = full_mask(g.n)
    for a in range(g.n - 1):
        ab = pack_indices(g.n, range(a + 1))
        cand = full & ~ab & ~g.rows[a]  # non-neighbours above a
        bs = bit_indices(cand)
        if bs.size == 0:
            continue
        common = g.rows[bs] & g.rows[a][None, :]
        counts = np.bitwise_count(common).sum(axis=1)
        for b, c in zip(bs, counts):
            if int(c) >= need:
                out.append((a, int(b)))
    return out


def find_sphere_certificate(g: Graph, k: int, budget: int,
                            rng: RandomSource) -> SphereCertificate | None:
    """Randomized search for a sphere certificate: pick a viable
    non-adjacent seed pair, greedily extend by non-adjacent pairs inside
    the running common neighbourhood (with backtracking, capped per
    restart), then try the 2^(k+1) side assignments for the u-set
    condition.  Returns the first certificate passing every clause, or
    None after ``budget`` restarts; None means the search failed, not
    that no certificate exists."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    if g.n < 2 * (k + 1):
        return None
    seeds = _viable_first_pairs(g, k)
    if not seeds:
        return None
    cur = rng.cursor()
    full = full_mask(g.n)
    for _ in range(budget):
        a, b = seeds[cur.randint(len(seeds))]
        pool = g.rows[a] & g.rows[b] & full
        pairs = [(a, b)]
        attempts = [_PAIR_ATTEMPTS_PER_RESTART]
        found = _extend_pairs(g, k, pairs, pool, cur, attempts)
        if found is not None:
            return found
    return None


def _extend_pairs(g: Graph, k: int, pairs: list[tuple[int, int]],
                  pool: np.ndarray, cur, attempts: list[int]) -> SphereCertificate | None:
    if len(pairs) == k + 1:
        return _finish_certificate(g, k, pairs)
    members = [int(x) for x in bit_indices(pool)]
    if len(members) < 2 * (k + 1 - len(pairs)):
        return None
    cur.shuffle(members)
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            x, y = members[i], members[j]
            if g.adjacent(x, y):
                continue
            if attempts[0] <= 0:
                return None
            attempts[0] -= 1
            sub = pool & g.rows[x] & g.rows[y]
            pairs.append((min(x, y), max(x, y)))
            hit = _extend_pairs(g, k, pairs, sub, cur, attempts)
            if hit is not None:
                return hit
            pairs.pop()
    return None


def _finish_certificate(g: Graph, k: int,
                        pairs: list[tuple[int, int]]) -> SphereCertificate | None:
    support = [v for pr in pairs for v in pr]
    sbits = pack_indices(g.n, support)
    # strengthened external condition is independent of side choices
    violators = full_mask(g.n) & ~sbits
    for x, y in pairs:
        violators = violators & (g.rows[x] | g.rows[y])
        if not np.any(violators):
            break
    if np.any(violators):
        return None
    for choice in range(1 << (k + 1)):
        u = tuple(pr[(choice >> i) & 1] for i, pr in enumerate(pairs))
        if common_neighborhood(g, u).size == 0:
            v = tuple(pr[1 - ((choice >> i) & 1)] for i, pr in enumerate(pairs))
            cert = SphereCertificate(k, u, v)
            check_certificate(g, cert)  # insurance; construction should satisfy it
            return cert
    return None


def build_retraction(g: Graph, cert: SphereCertificate) -> RetractionMap:
    """Identity on the certificate support; every external vertex y goes
    to u_i for the least i with y adjacent to neither u_i nor v_i."""
    check_certificate(g, cert)
    assignment = list(range(g.n))
    support = set(cert.vertices)
    for y in range(g.n):
        if y in support:
            continue
        for i in range(cert.k + 1):
            if not g.adjacent(y, cert.u[i]) and not g.adjacent(y, cert.v[i]):
                assignment[y] = cert.u[i]
                break
        else:  # pragma: no cover - impossible once check_certificate passed
            raise CertificateError(f"no free index for external vertex {y}")
    return RetractionMap(tuple(assignment))


def verify_retraction(g: Graph, r: RetractionMap, cert: SphereCertificate) -> bool:
    """Does r fix the certificate support pointwise and send every host
    edge to an edge or a vertex of the induced octahedron?"""
    if len(r.assignment) != g.n:
        return False
    support = set(cert.vertices)
    for x in support:
        if r(x) != x:
            return False
    for x in range(g.n):
        if r(x) not in support:
            return False
    for x, y in g.edges():
        ix, iy = r(x), r(y)
        if ix != iy and not g.adjacent(ix, iy):
            return False
    return True


def vanishing_certificate(g: Graph, k: int) -> VanishingVerdict:
    """One-sided certificate that b~_k(X(g)) = 0: too few vertices for a
    k-cycle's support, or an empty 2k-core."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if g.n < 2 * k + 2:
        return VanishingVerdict(True, f"fewer than {2 * k + 2} vertices")
    core, members = k_core(g, 2 * k)
    if members.size == 0:
        return VanishingVerdict(True, f"empty {2 * k}-core")
    return VanishingVerdict(False, None)
