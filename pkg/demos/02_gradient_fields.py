"""Discrete gradient fields: certified upper bounds on Betti numbers.

Two ways to pair faces so that everything unpaired bounds homology
from above: a deterministic least-extension rule, whose critical faces
have a direct combinatorial description, and a randomized matching
with conflict and cycle repair.  Both are checked for acyclicity, the
property that makes the bound valid.
"""

from cliquetop import (
    RandomSource,
    adjacent_kface_pairs,
    build_clique_complex,
    generate_gnp,
    lex_critical_faces,
    lex_gradient_field,
    octahedral_skeleton,
    random_matching_field,
    reduced_betti,
    verify_acyclic,
)


def main() -> None:
    # The octahedral 2-sphere: Betti (0, 0, 1) reduced, so any valid
    # field must keep at least one critical face in dimension 2.
    g = octahedral_skeleton(2)
    X = build_clique_complex(g, max_dim=5)
    summary = reduced_betti(X)
    print(f"octahedral 2-sphere: f-vector {X.f_vector()}, "
          f"reduced Betti {summary.reduced}")
    for k in range(X.dim + 1):
        field = lex_gradient_field(X, k)
        crit = lex_critical_faces(X, k)
        assert verify_acyclic(field, X)
        print(f"  layer {k}: {field.pair_count} pairs, "
              f"{crit.size} critical faces "
              f"(Betti {summary.reduced[k]} <= {crit.size} <= "
              f"{X.face_count(k)})")

    # A random instance: the least-extension rule leaves few critical
    # edges once most edges have a common neighbor above both ends.
    n, p = 80, 0.3
    src = RandomSource(7, stream_id=1)
    g = generate_gnp(n, p, src)
    X = build_clique_complex(g, max_dim=2)
    crit = lex_critical_faces(X, 1)
    print()
    print(f"G({n}, {p}): {X.face_count(1)} edges, "
          f"{crit.size} critical under the least-extension rule "
          f"({crit.size / X.face_count(1):.1%})")

    # The randomized matching proposes one downward pair per triangle,
    # then repairs collisions and any directed cycles.
    field, repair = random_matching_field(X, 2, src.substream(9))
    assert verify_acyclic(field, X)
    print(f"random matching on {X.face_count(2)} triangles: "
          f"{repair.proposed} proposed, {repair.conflict_dropped} lost to "
          f"conflicts, {repair.cycle_dropped} to cycles, "
          f"{field.pair_count} kept (acyclic: True)")
    print(f"adjacent triangle pairs sharing an edge: "
          f"{adjacent_kface_pairs(X, 2)}")


if __name__ == "__main__":
    main()
