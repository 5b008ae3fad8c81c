import itertools
import json

import numpy as np
import pytest

from cliquetop.complexes import build_clique_complex
from cliquetop.detectors import (
    CertificateError,
    RetractionMap,
    SphereCertificate,
    build_retraction,
    check_certificate,
    density_exponent,
    find_sphere_certificate,
    octahedral_skeleton,
    vanishing_certificate,
    verify_retraction,
)
from cliquetop.graphs import Graph, generate_gnp
from cliquetop.homology import reduced_betti
from cliquetop.rng import RandomSource


# -- octahedral skeletons ------------------------------------------------

def test_octahedral_skeleton_counts():
    for k in (0, 1, 2, 3):
        g = octahedral_skeleton(k)
        n = 2 * (k + 1)
        assert g.n == n
        assert g.edge_count() == n * (n - 1) // 2 - (k + 1)
    assert octahedral_skeleton(1) == Graph.from_edges(4, [(0, 1), (0, 3), (1, 2), (2, 3)])


def test_octahedral_skeleton_homology_concentrated():
    for k in (1, 2, 3):
        g = octahedral_skeleton(k)
        s = reduced_betti(build_clique_complex(g, k + 1))
        expect = tuple(1 if i == k else 0 for i in range(k + 1))
        assert s.reduced == expect and not s.truncated


def test_density_exponent():
    from fractions import Fraction
    for k in (1, 2, 3):
        info = density_exponent(k)
        assert info.density == k
        assert info.exponent == Fraction(-1, k)
    with pytest.raises(ValueError):
        density_exponent(0)


# -- certificate checking ------------------------------------------------

def c4_cert():
    # C_4 = octahedral_skeleton(1): pairs (0,2) and (1,3)
    return SphereCertificate(1, (0, 1), (2, 3))


def test_check_certificate_on_c4():
    check_certificate(octahedral_skeleton(1), c4_cert())


def test_check_certificate_violations():
    g = octahedral_skeleton(1)
    with pytest.raises(CertificateError, match="k\\+1"):
        check_certificate(g, SphereCertificate(1, (0,), (2, 3)))
    with pytest.raises(CertificateError, match="distinct"):
        check_certificate(g, SphereCertificate(1, (0, 0), (2, 3)))
    with pytest.raises(CertificateError, match="is an edge"):
        check_certificate(g, SphereCertificate(1, (0, 2), (1, 3)))
    # pendant adjacent to both u's is a common neighbour of the u-set
    h = Graph.from_edges(5, [(0, 1), (0, 3), (1, 2), (2, 3), (4, 0), (4, 1)])
    with pytest.raises(CertificateError, match="common neighbor"):
        check_certificate(h, c4_cert())
    # external vertex adjacent into every pair violates the strengthened clause
    h2 = Graph.from_edges(5, [(0, 1), (0, 3), (1, 2), (2, 3), (4, 0), (4, 3)])
    with pytest.raises(CertificateError, match="external vertex"):
        check_certificate(h2, SphereCertificate(1, (1, 0), (3, 2)))


# -- search --------------------------------------------------------------

def test_find_on_c4():
    cert = find_sphere_certificate(octahedral_skeleton(1), 1, 50, RandomSource(1))
    assert cert is not None
    assert set(cert.u) | set(cert.v) == {0, 1, 2, 3}
    check_certificate(octahedral_skeleton(1), cert)


def test_find_none_on_k4_and_c5():
    assert find_sphere_certificate(Graph.complete(4), 1, 200, RandomSource(2)) is None
    assert find_sphere_certificate(Graph.cycle(5), 1, 200, RandomSource(3)) is None


def test_find_octahedron_k2():
    cert = find_sphere_certificate(octahedral_skeleton(2), 2, 100, RandomSource(7))
    assert cert is not None and cert.k == 2
    check_certificate(octahedral_skeleton(2), cert)


def test_find_deterministic():
    g = generate_gnp(60, 0.08, RandomSource(11))
    a = find_sphere_certificate(g, 1, 300, RandomSource(5, stream_id=3))
    b = find_sphere_certificate(g, 1, 300, RandomSource(5, stream_id=3))
    assert a == b


def test_find_budget_validation():
    with pytest.raises(ValueError):
        find_sphere_certificate(Graph.cycle(4), 1, 0, RandomSource(1))


def test_found_certificates_are_sound():
    hits = 0
    for seed in range(25):
        g = generate_gnp(40, 0.12, RandomSource(seed + 1000))
        cert = find_sphere_certificate(g, 1, 500, RandomSource(seed, stream_id=9))
        if cert is None:
            continue
        hits += 1
        check_certificate(g, cert)
        r = build_retraction(g, cert)
        assert verify_retraction(g, r, cert)
        s = reduced_betti(build_clique_complex(g, 2))
        assert s.reduced[1] >= 1
    assert hits >= 3  # the regime is chosen so that spheres are common


# -- retraction ----------------------------------------------------------

def test_retraction_pendant_example():
    # C_4 support plus pendant y=4 adjacent only to u_1=0: r(y) = u_2 = 1
    g = Graph.from_edges(5, [(0, 1), (0, 3), (1, 2), (2, 3), (4, 0)])
    cert = c4_cert()
    r = build_retraction(g, cert)
    assert r(4) == 1
    assert [r(x) for x in range(4)] == [0, 1, 2, 3]
    assert verify_retraction(g, r, cert)
    assert reduced_betti(build_clique_complex(g, 2)).reduced[1] == 1


def test_retraction_rejects_bad_certificate():
    g = Graph.from_edges(5, [(0, 1), (0, 3), (1, 2), (2, 3), (4, 0), (4, 1)])
    with pytest.raises(CertificateError):
        build_retraction(g, c4_cert())


def test_retraction_identity_on_skeleton():
    for k in (1, 2):
        g = octahedral_skeleton(k)
        cert = SphereCertificate(k, tuple(range(k + 1)),
                                 tuple(range(k + 1, 2 * k + 2)))
        r = build_retraction(g, cert)
        assert r.assignment == tuple(range(g.n))
        assert verify_retraction(g, r, cert)


def test_verify_retraction_rejects_broken_map():
    g = Graph.from_edges(5, [(0, 1), (0, 3), (1, 2), (2, 3), (4, 0)])
    cert = c4_cert()
    # sending y to v_2=3 while y ~ u_1=0: image edge (0,3) is a non-edge... is it?
    # (0,3) IS an edge of C_4 here; break it properly: send y to 2 (y ~ 0, (0,2) non-edge)
    bad = RetractionMap((0, 1, 2, 3, 2))
    assert not verify_retraction(g, bad, cert)
    moved = RetractionMap((1, 1, 2, 3, 1))  # does not fix the support
    assert not verify_retraction(g, moved, cert)
    assert not verify_retraction(g, RetractionMap((0, 1, 2, 3)), cert)


# -- vanishing certificates ----------------------------------------------

def test_vanishing_certificate_small_and_forest():
    v = vanishing_certificate(Graph.complete(3), 1)
    assert v.guaranteed_zero and "vertices" in v.reason
    tree = Graph.from_edges(8, [(i, i + 1) for i in range(7)])
    v = vanishing_certificate(tree, 1)
    assert v.guaranteed_zero and "core" in v.reason
    v = vanishing_certificate(Graph.cycle(4), 1)
    assert not v.guaranteed_zero and v.reason is None
    with pytest.raises(ValueError):
        vanishing_certificate(Graph.cycle(4), 0)


def test_vanishing_certificate_sound_exhaustive_n5():
    # every graph on 5 labeled vertices, k=1
    pairs = list(itertools.combinations(range(5), 2))
    for mask in range(1 << 10):
        g = Graph.from_edges(5, [pairs[i] for i in range(10) if mask >> i & 1])
        verdict = vanishing_certificate(g, 1)
        if verdict.guaranteed_zero:
            s = reduced_betti(build_clique_complex(g, 4))
            assert s.reduced[1] == 0 if len(s.reduced) > 1 else True


def test_vanishing_certificate_sound_random():
    for seed in range(10):
        g = generate_gnp(12, 0.3, RandomSource(seed + 1100))
        for k in (1, 2):
            if vanishing_certificate(g, k).guaranteed_zero:
                s = reduced_betti(build_clique_complex(g, 11))
                if k < len(s.reduced):
                    assert s.reduced[k] == 0


# -- serialization -------------------------------------------------------

def test_certificate_json_roundtrip():
    cert = SphereCertificate(2, (0, 1, 2), (3, 4, 5))
    blob = json.dumps(cert.to_json())
    assert SphereCertificate.from_json(blob) == cert
    r = RetractionMap((0, 1, 2, 3))
    assert r.to_json() == {"assignment": [0, 1, 2, 3]}
