"""Build a clique complex from a random graph and measure its homology.

Walkthrough: draw one G(n, p) sample, grow every clique into a face,
read off the f-vector, compute reduced Betti numbers over a prime
field, and close the loop with the Euler identity.  A small fixture
with 2-torsion shows why the choice of coefficients matters.
"""

from cliquetop import (
    CoefficientSpec,
    RandomSource,
    build_clique_complex,
    euler_check,
    generate_gnp,
    integer_homology,
    load_fixture,
    maximal_faces,
    reduced_betti,
)


def main() -> None:
    n, p = 25, 0.35
    src = RandomSource(42, stream_id=1)
    g = generate_gnp(n, p, src)
    print(f"G({n}, {p}) sample: {g.edge_count()} edges")

    X = build_clique_complex(g, max_dim=n - 1)
    print(f"clique complex: dim {X.dim}, f-vector {X.f_vector()}")
    print(f"fully enumerated: {X.exhausted}")
    print(f"largest faces: {maximal_faces(X)[:3]} ...")

    summary = reduced_betti(X)
    print(f"reduced Betti numbers: {summary.reduced}")
    print(f"Euler identity holds: {euler_check(X.f_vector(), summary)}")

    # Coefficients matter: the 6-vertex projective plane has 2-torsion,
    # so its dimension-1 Betti number depends on the field.
    Y = load_fixture("rp2_6")
    mod2 = reduced_betti(Y, CoefficientSpec.prime_field(2))
    big = reduced_betti(Y)  # default: a large prime, rationally correct
    z = integer_homology(Y, 1)
    print()
    print(f"projective plane, f-vector {Y.f_vector()}:")
    print(f"  Betti over GF(2):          {mod2.reduced}")
    print(f"  Betti over a large prime:  {big.reduced}")
    print(f"  integer H_1: rank {z.rank}, torsion {list(z.torsion)}")


if __name__ == "__main__":
    main()
