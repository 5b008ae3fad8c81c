"""Shared oracles for the test suite, kept independent of the package's
own elimination code: ranks and normal forms come from sympy."""

import sympy
from sympy.matrices.normalforms import smith_normal_form as _sympy_snf

from cliquetop.complexes import build_clique_complex
from cliquetop.homology import boundary_matrix


def sympy_rank_modp(dense, p):
    if dense.shape[0] == 0 or dense.shape[1] == 0:
        return 0
    M = sympy.Matrix(dense.tolist()).applyfunc(lambda x: x % p)
    return M.rank(iszerofunc=lambda x: x % p == 0)


def sympy_snf_factors(dense):
    if dense.shape[0] == 0 or dense.shape[1] == 0:
        return []
    S = _sympy_snf(sympy.Matrix(dense.tolist()))
    out = []
    for i in range(min(S.rows, S.cols)):
        if S[i, i] != 0:
            out.append(abs(int(S[i, i])))
    return sorted(out)


def sympy_reduced_betti(g, p, max_dim=None):
    """Reduced Betti numbers of the full clique complex of g over GF(p),
    from dense sympy ranks."""
    cap = max_dim if max_dim is not None else max(g.n - 1, 0)
    X = build_clique_complex(g, cap)
    f = X.f_vector()
    top = len(f) - 1
    if top < 0:
        return ()
    ranks = [1 if f[0] else 0]
    for k in range(1, top + 1):
        ranks.append(sympy_rank_modp(boundary_matrix(X, k).to_dense(), p))
    ranks.append(0)
    return tuple(f[k] - ranks[k] - ranks[k + 1] for k in range(top + 1))
