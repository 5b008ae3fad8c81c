"""Concentration of the dominant Betti number as n grows.

Fix p = n^alpha inside the regime where dimension-k homology
dominates.  The ratio Betti_k / f_k then concentrates: an
alternating-sum floor (f_1 - f_0 - f_2)/f_1 holds instance by
instance, and both the floor and the observed ratio approach
1 - 1/(n p) - n p^2 / 3-style corrections as n grows.  Expected face
counts from the closed forms track the sample means throughout.
"""

import statistics

from cliquetop import (
    RandomSource,
    build_clique_complex,
    dimension_estimate,
    expected_faces,
    generate_gnp,
    reduced_betti,
)


def main() -> None:
    alpha, k, trials = -0.8, 1, 5
    print(f"p = n^{alpha}, {trials} trials per size:")
    print(f"  {'n':>5s} {'p':>8s} {'mean B_1/f_1':>13s} {'floor':>7s} "
          f"{'mean f_1':>9s} {'E[f_1]':>9s} {'est. dim':>8s}")
    for n in (200, 600, 1800):
        p = float(n) ** alpha
        ratios, floors, f1s = [], [], []
        for idx in range(trials):
            src = RandomSource(505, stream_id=1000 * n + idx)
            g = generate_gnp(n, p, src)
            X = build_clique_complex(g, max_dim=k + 1)
            s = reduced_betti(X)
            fv = X.f_vector()
            f0, f1 = fv[0], fv[1]
            f2 = fv[2] if len(fv) > 2 else 0
            ratios.append(s.reduced[1] / f1)
            floors.append((f1 - f0 - f2) / f1)
            f1s.append(f1)
        print(f"  {n:5d} {p:8.5f} {statistics.fmean(ratios):13.4f} "
              f"{statistics.fmean(floors):7.4f} "
              f"{statistics.fmean(f1s):9.1f} "
              f"{expected_faces(n, p, 1):9.1f} "
              f"{dimension_estimate(n, p):8.2f}")
    print()
    print("the ratio climbs with n and hugs its floor: almost all edges "
          "that survive the vertex and triangle corrections carry "
          "independent 1-cycles")


if __name__ == "__main__":
    main()
